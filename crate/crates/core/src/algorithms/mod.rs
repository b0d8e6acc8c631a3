//! Factorization algorithms.
//!
//! * [`greess`]: greedy search over intervals seeded by the essential part.
//! * [`grecond`]: greedy "on demand" concept search with attribute extension.
//! * [`grecon`]: greedy set cover over the full concept lattice.
//! * [`asso`]: association-matrix baseline; may overcover.
//!
//! The first three return from-below factorizations made of formal concepts.

mod asso;
mod grecon;
mod grecond;
mod greess;

pub use asso::{asso, AssoOutput, AssoParams};
pub use grecon::{grecon, DEFAULT_GRECON_CONCEPT_CAP};
pub use grecond::grecond;
pub use greess::{compute_intervals, greess, greess_run, GreessRun, IntervalSeed, IntervalSeedSet};

use crate::bitset::BitSet;
use crate::boolmat::{BooleanMatrix, FactorSet};

/// Output of a factorization run.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationResult {
    pub factors: FactorSet,
    /// 1s of the input not covered by all factors.
    pub residual_uncovered: usize,
    /// 0s of the input covered by some factor.
    pub residual_overcovered: usize,
    /// `(E_u, E_o)` after each factor.
    pub per_step: Vec<(usize, usize)>,
}

impl FactorizationResult {
    /// Scores `factors` against `input` prefix by prefix.
    pub fn from_factors(input: &BooleanMatrix, factors: FactorSet) -> Self {
        let mut covered = vec![BitSet::new(input.n_cols()); input.n_rows()];
        let mut e_u = input.count_ones();
        let mut e_o = 0;
        let mut per_step = Vec::with_capacity(factors.len());
        for f in factors.iter() {
            for i in &f.extent {
                let fresh = f.intent.difference(&covered[i]);
                let hits = fresh.intersection_count(input.row(i));
                e_u -= hits;
                e_o += fresh.count() - hits;
                covered[i].union_with(&fresh);
            }
            per_step.push((e_u, e_o));
        }
        FactorizationResult {
            factors,
            residual_uncovered: e_u,
            residual_overcovered: e_o,
            per_step,
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.residual_uncovered == 0 && self.residual_overcovered == 0
    }
}

/// Cells still to be covered, stored row by row.
#[derive(Clone, Debug)]
pub(crate) struct Uncovered {
    rows: Vec<BitSet>,
    count: usize,
}

impl Uncovered {
    pub(crate) fn ones_of(m: &BooleanMatrix) -> Self {
        Uncovered {
            rows: m.row_sets().to_vec(),
            count: m.count_ones(),
        }
    }

    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.count
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// `|extent × intent ∩ U|`
    #[inline]
    pub(crate) fn count_in(&self, extent: &BitSet, intent: &BitSet) -> usize {
        extent.iter().map(|i| self.rows[i].intersection_count(intent)).sum()
    }

    /// Removes `extent × intent` and returns how many cells were removed.
    pub(crate) fn remove(&mut self, extent: &BitSet, intent: &BitSet) -> usize {
        let mut removed = 0;
        for i in extent {
            let before = self.rows[i].count();
            self.rows[i].difference_with(intent);
            removed += before - self.rows[i].count();
        }
        self.count -= removed;
        removed
    }
}
