use crate::boolmat::{BooleanMatrix, FactorSet};
use crate::error::Result;
use crate::galois::enumerate_concepts_capped;

use super::{FactorizationResult, Uncovered};

pub const DEFAULT_GRECON_CONCEPT_CAP: usize = 200_000;

/// Greedy set cover over all formal concepts (maximal tiles): repeatedly
/// takes the concept covering the most uncovered 1s, earliest in lectic
/// order on ties, until at most `epsilon` remain.
pub fn grecon(m: &BooleanMatrix, epsilon: usize, max_concepts: usize) -> Result<FactorizationResult> {
    let concepts = enumerate_concepts_capped(m, max_concepts)?;
    let mut uncovered = Uncovered::ones_of(m);
    let mut factors = FactorSet::new(m.n_rows(), m.n_cols());
    while uncovered.len() > epsilon {
        let best = concepts
            .iter()
            .map(|c| uncovered.count_in(&c.extent, &c.intent))
            .enumerate()
            .fold((0, 0), |acc, (idx, s)| if s > acc.1 { (idx, s) } else { acc });
        if best.1 == 0 {
            break;
        }
        let c = concepts[best.0].clone();
        uncovered.remove(&c.extent, &c.intent);
        factors.push(c);
    }
    Ok(FactorizationResult::from_factors(m, factors))
}
