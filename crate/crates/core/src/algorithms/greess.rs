//! GreEss and its seeding step.
//!
//! Seeding groups the essential 1s into concepts `⟨C, D⟩` of `E(I)`. Any
//! concept of `I` taken from the interval `[γ(C), μ(D)]` covers the lifted
//! rectangle `C↑↓ × D↓↑` (closures in `I`), so one factor per seed is enough
//! to cover every essential cell and hence all of `I`.
//!
//! The factor search then picks, round by round, the unused seed whose
//! interval holds the concept covering the most uncovered 1s. Each interval
//! is searched greedily inside the restricted context
//! `J = I ∩ (D↓ × C↑)`, whose concepts are exactly the interval's members.

use crate::bitset::BitSet;
use crate::boolmat::{BooleanMatrix, FactorSet};
use crate::error::{BmfError, Result};
use crate::essential::compute_essential;
use crate::galois::{down, up, FormalConcept};

use super::{FactorizationResult, Uncovered};

/// One seed `⟨C, D⟩`, a formal concept of the essential part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSeed {
    pub rows: BitSet,
    pub cols: BitSet,
}

impl IntervalSeed {
    /// `(C↑↓, D↓↑)` with closures taken in `m`: the cells every concept of
    /// the seed's interval covers.
    pub fn lifted(&self, m: &BooleanMatrix) -> (BitSet, BitSet) {
        (down(m, &up(m, &self.rows)), up(m, &down(m, &self.cols)))
    }
}

/// Seeds in discovery order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntervalSeedSet {
    pub seeds: Vec<IntervalSeed>,
}

impl IntervalSeedSet {
    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }
}

/// Greedily groups the essential cells of `m` into seeds.
///
/// Each seed is grown from `D = ∅` by adding the column that maximizes the
/// number of still-uncovered essential cells inside the lifted rectangle of
/// the candidate `⟨(D ∪ {j})↓, (D ∪ {j})↓↑⟩` (closures in `E(I)`), until no
/// column improves the count. Ties go to the lowest column index.
pub fn compute_intervals(m: &BooleanMatrix) -> IntervalSeedSet {
    let ess = compute_essential(m);
    let mut uncovered = Uncovered::ones_of(&ess);
    let mut seeds = Vec::new();

    while !uncovered.is_empty() {
        let mut cols = BitSet::new(m.n_cols());
        let mut rows = BitSet::new(m.n_rows());
        let mut lifted = (BitSet::new(m.n_rows()), BitSet::new(m.n_cols()));
        let mut score = 0;

        loop {
            let mut best: Option<(usize, BitSet, BitSet, (BitSet, BitSet))> = None;
            for j in 0..m.n_cols() {
                if cols.contains(j) {
                    continue;
                }
                let mut gen = cols.clone();
                gen.insert(j);
                let c = down(&ess, &gen);
                let d = up(&ess, &c);
                let seed = IntervalSeed { rows: c, cols: d };
                let lift = seed.lifted(m);
                let s = uncovered.count_in(&lift.0, &lift.1);
                if best.as_ref().is_none_or(|b| s > b.0) {
                    best = Some((s, seed.rows, seed.cols, lift));
                }
            }
            match best {
                Some((s, c, d, lift)) if s > score => {
                    score = s;
                    rows = c;
                    cols = d;
                    lifted = lift;
                }
                _ => break,
            }
        }

        // Every uncovered essential cell gives its column a positive score,
        // so the inner loop always accepts at least one column.
        debug_assert!(score > 0);
        uncovered.remove(&lifted.0, &lifted.1);
        seeds.push(IntervalSeed { rows, cols });
    }
    IntervalSeedSet { seeds }
}

/// GreEss result with the seeds it consumed.
#[derive(Clone, Debug, PartialEq)]
pub struct GreessRun {
    pub result: FactorizationResult,
    pub seeds: IntervalSeedSet,
    /// `factor_seeds[p]` is the index in `seeds` that factor `p` came from.
    pub factor_seeds: Vec<usize>,
}

/// Restricted context of one seed: rows `D↓`, columns `C↑`.
struct SeedContext {
    holders: BitSet,
    shared: BitSet,
}

impl SeedContext {
    fn new(m: &BooleanMatrix, seed: &IntervalSeed) -> Self {
        SeedContext {
            holders: down(m, &seed.cols),
            shared: up(m, &seed.rows),
        }
    }

    /// Greedy attribute extension inside the restricted context. Returns the
    /// best concept found and the number of uncovered cells it covers.
    fn search(&self, m: &BooleanMatrix, uncovered: &Uncovered) -> (usize, FormalConcept) {
        let mut intent = BitSet::new(m.n_cols());
        let mut extent = BitSet::new(m.n_rows());
        let mut score = 0;
        let mut cur_rows = self.holders.clone();

        loop {
            let mut best: Option<(usize, BitSet, BitSet)> = None;
            for j in self.shared.difference(&intent).iter() {
                // (F ∪ {j})↓J and its closure (F ∪ {j})↓J↑J
                let ext = cur_rows.intersection(m.col(j));
                let mut int = up(m, &ext);
                int.intersect_with(&self.shared);
                let s = uncovered.count_in(&ext, &int);
                if best.as_ref().is_none_or(|b| s > b.0) {
                    best = Some((s, ext, int));
                }
            }
            match best {
                Some((s, ext, int)) if s > score => {
                    score = s;
                    cur_rows = ext.clone();
                    extent = ext;
                    intent = int;
                }
                _ => break,
            }
        }
        (score, FormalConcept::new(extent, intent))
    }
}

/// Factors `m` until at most `epsilon` 1s remain uncovered.
pub fn greess(m: &BooleanMatrix, epsilon: usize) -> Result<FactorizationResult> {
    greess_run(m, epsilon).map(|r| r.result)
}

/// [`greess`] returning the seed set and the seed behind each factor.
pub fn greess_run(m: &BooleanMatrix, epsilon: usize) -> Result<GreessRun> {
    let seeds = compute_intervals(m);
    let contexts: Vec<SeedContext> = seeds.seeds.iter().map(|s| SeedContext::new(m, s)).collect();
    let mut unused: Vec<usize> = (0..seeds.len()).collect();
    let mut uncovered = Uncovered::ones_of(m);
    let mut factors = FactorSet::new(m.n_rows(), m.n_cols());
    let mut factor_seeds = Vec::new();

    while uncovered.len() > epsilon {
        let mut best: Option<(usize, usize, FormalConcept)> = None;
        for (pos, &idx) in unused.iter().enumerate() {
            let (s, c) = contexts[idx].search(m, &uncovered);
            if s > best.as_ref().map_or(0, |b| b.0) {
                best = Some((s, pos, c));
            }
        }
        let Some((_, pos, concept)) = best else {
            return Err(BmfError::Stalled {
                uncovered: uncovered.len(),
            });
        };
        let idx = unused.remove(pos);
        uncovered.remove(&concept.extent, &concept.intent);
        factors.push(concept);
        factor_seeds.push(idx);
    }

    Ok(GreessRun {
        result: FactorizationResult::from_factors(m, factors),
        seeds,
        factor_seeds,
    })
}
