use crate::bitset::BitSet;
use crate::boolmat::{BooleanMatrix, FactorSet};
use crate::galois::{up, FormalConcept};

use super::{FactorizationResult, Uncovered};

/// GreConD: grows each factor from `D = ∅` by the column whose closure
/// `⟨(D ∪ {j})↓, (D ∪ {j})↓↑⟩` covers the most uncovered 1s, stopping when no
/// column helps. Runs until at most `epsilon` 1s are uncovered or
/// `max_factors` factors exist.
pub fn grecond(m: &BooleanMatrix, epsilon: usize, max_factors: Option<usize>) -> FactorizationResult {
    let cap = max_factors.unwrap_or(usize::MAX);
    let mut uncovered = Uncovered::ones_of(m);
    let mut factors = FactorSet::new(m.n_rows(), m.n_cols());

    while uncovered.len() > epsilon && factors.len() < cap {
        let mut intent = BitSet::new(m.n_cols());
        let mut extent = BitSet::full(m.n_rows());
        let mut score = 0;
        loop {
            let mut best: Option<(usize, BitSet, BitSet)> = None;
            for j in 0..m.n_cols() {
                if intent.contains(j) {
                    continue;
                }
                let ext = extent.intersection(m.col(j));
                let int = up(m, &ext);
                let s = uncovered.count_in(&ext, &int);
                if best.as_ref().is_none_or(|b| s > b.0) {
                    best = Some((s, ext, int));
                }
            }
            match best {
                Some((s, ext, int)) if s > score => {
                    score = s;
                    extent = ext;
                    intent = int;
                }
                _ => break,
            }
        }
        if score == 0 {
            break;
        }
        uncovered.remove(&extent, &intent);
        factors.push(FormalConcept::new(extent, intent));
    }
    FactorizationResult::from_factors(m, factors)
}
