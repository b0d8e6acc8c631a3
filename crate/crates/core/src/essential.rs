//! The essential part `E(I)` of a Boolean matrix and the concept space it induces.
//!
//! A 1 at `(i, j)` is essential when its interval `I_ij` (the concepts
//! covering the cell) is minimal among all non-empty cell intervals. Covering
//! just the essential cells with formal concepts of `I` already covers every
//! 1 of `I`, so the essential cells are where a factorization has to look.
//!
//! Cell intervals are ordered by `I_ij ⊆ I_i'j'` iff `{i}↑ ⊆ {i'}↑` and
//! `{j}↓ ⊆ {j'}↓`. That makes the test local: `(i, j)` is essential iff
//! `I_ij = 1`, no row strictly contained in row `i` has a 1 in column `j`,
//! and no column strictly contained in column `j` has a 1 in row `i`.

use crate::bitset::BitSet;
use crate::boolmat::{bool_product, contained, BooleanMatrix, FactorSet};
use crate::error::{BmfError, Result};
use crate::galois::{concept_from_rows, enumerate_concepts_capped, is_concept, FormalConcept};

/// Each set minus the union of all sets strictly contained in it.
fn strip_strict_subsets(sets: &[BitSet]) -> Vec<BitSet> {
    sets.iter()
        .map(|s| {
            let mut below = BitSet::new(s.universe());
            for t in sets {
                if t.is_proper_subset(s) {
                    below.union_with(t);
                }
            }
            s.difference(&below)
        })
        .collect()
}

/// `E(I)`. Accepts non-clarified input and applies the cell test literally
/// with strict containment; uniqueness of the essential part only holds for
/// clarified matrices.
pub fn compute_essential(m: &BooleanMatrix) -> BooleanMatrix {
    let rows = strip_strict_subsets(m.row_sets());
    let cols = strip_strict_subsets(m.col_sets());
    let out = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| BitSet::from_indices(m.n_cols(), r.iter().filter(|&j| cols[j].contains(i))))
        .collect();
    BooleanMatrix::from_row_sets(m.n_cols(), out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EssentialReport {
    pub essential: BooleanMatrix,
    pub ones_input: usize,
    pub ones_essential: usize,
    /// `ones_essential / ones_input`; 1.0 for an all-zero input.
    pub ratio: f64,
    /// Set when the input has no 1s and the ratio is a convention.
    pub zero_input: bool,
}

pub fn essential_report(m: &BooleanMatrix) -> EssentialReport {
    let essential = compute_essential(m);
    let ones_input = m.count_ones();
    let ones_essential = essential.count_ones();
    let zero_input = ones_input == 0;
    let ratio = if zero_input {
        1.0
    } else {
        ones_essential as f64 / ones_input as f64
    };
    EssentialReport {
        essential,
        ones_input,
        ones_essential,
        ratio,
        zero_input,
    }
}

/// Membership in `B_E(I)`, the union of the intervals of essential cells.
///
/// A concept lies in `I_ij` iff it covers `(i, j)`, so this asks whether the
/// concept's rectangle contains an essential cell.
pub fn in_essential_space(m: &BooleanMatrix, c: &FormalConcept) -> Result<bool> {
    if !is_concept(m, c) {
        return Err(BmfError::NotAConcept);
    }
    Ok(in_essential_space_with(&compute_essential(m), c))
}

/// [`in_essential_space`] against a precomputed `E(I)`; no closure check.
pub fn in_essential_space_with(essential: &BooleanMatrix, c: &FormalConcept) -> bool {
    c.extent.iter().any(|i| !essential.row(i).is_disjoint(&c.intent))
}

/// Replaces each rectangle of a from-below factorization by the concept its
/// row set generates, `⟨C↑↓, C↑⟩`. Duplicates are merged (first occurrence
/// kept) and empty rectangles dropped. The result covers at least what
/// `A∘B` covered and stays below `m`.
pub fn lift_to_concepts(m: &BooleanMatrix, a: &BooleanMatrix, b: &BooleanMatrix) -> Result<FactorSet> {
    let product = bool_product(a, b)?;
    if !contained(&product, m)? {
        return Err(BmfError::NotFromBelow);
    }
    let mut out = FactorSet::new(m.n_rows(), m.n_cols());
    for l in 0..a.n_cols() {
        if a.col(l).is_empty() || b.row(l).is_empty() {
            continue;
        }
        let c = concept_from_rows(m, a.col(l));
        if !out.iter().any(|x| *x == c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Default cap on the number of concepts the exact rank search will accept.
pub const DEFAULT_RANK_CONCEPT_CAP: usize = 20;

/// Exact Boolean rank by exhaustive search over concept subsets of
/// increasing size. With `restrict_to_essential`, only concepts of `B_E(I)`
/// are candidates. Fails with [`BmfError::ConceptCapExceeded`] when `B(I)`
/// has more than `max_concepts` members.
pub fn boolean_rank_oracle(m: &BooleanMatrix, restrict_to_essential: bool, max_concepts: usize) -> Result<usize> {
    let mut concepts = enumerate_concepts_capped(m, max_concepts)?;
    if restrict_to_essential {
        let ess = compute_essential(m);
        concepts.retain(|c| in_essential_space_with(&ess, c));
    }
    min_exact_cover(m, &concepts).ok_or(BmfError::Stalled {
        uncovered: m.count_ones(),
    })
}

/// Smallest number of `candidates` whose rectangles jointly equal `m`, or
/// `None` if they cannot cover every 1. Candidates must lie below `m`.
pub fn min_exact_cover(m: &BooleanMatrix, candidates: &[FormalConcept]) -> Option<usize> {
    let cells: Vec<(usize, usize)> = m.ones_iter().collect();
    let n = cells.len();
    let covers: Vec<BitSet> = candidates
        .iter()
        .map(|c| BitSet::from_indices(n, (0..n).filter(|&k| c.covers(cells[k].0, cells[k].1))))
        .collect();
    (0..=candidates.len()).find(|&k| cover_search(&covers, &BitSet::new(n), k))
}

fn cover_search(covers: &[BitSet], covered: &BitSet, budget: usize) -> bool {
    let universe = covered.universe();
    let Some(cell) = (0..universe).find(|&c| !covered.contains(c)) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    covers.iter().filter(|s| s.contains(cell)).any(|s| {
        let next = covered.union(s);
        cover_search(covers, &next, budget - 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::galois::enumerate_concepts;

    #[test]
    fn rank_remark_essential() {
        let m = fixtures::rank_remark();
        assert_eq!(compute_essential(&m), fixtures::rank_remark_essential());
        assert!(contained(&compute_essential(&m), &m).unwrap());
    }

    #[test]
    fn identity_is_its_own_essential_part() {
        let id = BooleanMatrix::identity(5);
        assert_eq!(compute_essential(&id), id);
    }

    #[test]
    fn example_essential_cells() {
        let m = fixtures::example_matrix();
        let e = compute_essential(&m);
        assert_eq!(e, fixtures::example_essential());
        assert_eq!(e.count_ones(), 7);
    }

    #[test]
    fn reports() {
        let r = essential_report(&fixtures::example_matrix());
        assert_eq!((r.ones_input, r.ones_essential), (16, 7));
        assert_eq!(r.ratio, 0.4375);
        assert!(!r.zero_input);

        let r = essential_report(&BooleanMatrix::ones(1, 1));
        assert_eq!(r.ratio, 1.0);

        // pairwise incomparable rows and columns
        let r = essential_report(&BooleanMatrix::from_strs(&["110", "011", "101"]));
        assert_eq!(r.ratio, 1.0);

        let r = essential_report(&BooleanMatrix::zeros(2, 3));
        assert!(r.zero_input);
        assert_eq!(r.ratio, 1.0);
    }

    #[test]
    fn shared_column_concept_outside_essential_space() {
        let m = fixtures::shared_column();
        let c = FormalConcept::from_indices(3, 4, [0, 1, 2], [0]);
        assert!(is_concept(&m, &c));
        assert!(!in_essential_space(&m, &c).unwrap());
        let row0 = FormalConcept::from_indices(3, 4, [0], [0, 1]);
        assert!(in_essential_space(&m, &row0).unwrap());
        let bogus = FormalConcept::from_indices(3, 4, [0], [0]);
        assert!(matches!(in_essential_space(&m, &bogus), Err(BmfError::NotAConcept)));
    }

    #[test]
    fn lift_closes_rectangles() {
        let m = fixtures::example_matrix();
        let a = BooleanMatrix::from_strs(&["1", "0", "0", "0", "0", "0"]);
        let b = BooleanMatrix::from_strs(&["10000"]);
        let f = lift_to_concepts(&m, &a, &b).unwrap();
        assert_eq!(f.concepts(), &[FormalConcept::from_indices(6, 5, [0, 4], [0, 1, 3])]);

        let ex = fixtures::example_factors();
        let f = lift_to_concepts(&m, &fixtures::example_a(), &fixtures::example_b()).unwrap();
        assert_eq!(f, ex);

        assert!(matches!(
            lift_to_concepts(&m, &BooleanMatrix::ones(6, 1), &BooleanMatrix::ones(1, 5)),
            Err(BmfError::NotFromBelow)
        ));
    }

    #[test]
    fn rank_oracle_fixtures() {
        let m = fixtures::rank_remark();
        assert_eq!(boolean_rank_oracle(&m, false, 20).unwrap(), 3);
        assert_eq!(boolean_rank_oracle(&m, true, 20).unwrap(), 3);
        let e = compute_essential(&m);
        assert_eq!(boolean_rank_oracle(&e, false, 20).unwrap(), 4);
        for n in 1..=5 {
            assert_eq!(boolean_rank_oracle(&BooleanMatrix::identity(n), false, 20).unwrap(), n);
        }
        assert_eq!(boolean_rank_oracle(&BooleanMatrix::zeros(3, 3), false, 20).unwrap(), 0);
    }

    #[test]
    fn rank_oracle_cap() {
        let m = BooleanMatrix::from_fn(6, 6, |i, j| i != j);
        assert_eq!(enumerate_concepts(&m).len(), 64);
        assert!(matches!(
            boolean_rank_oracle(&m, false, 20),
            Err(BmfError::ConceptCapExceeded { cap: 20 })
        ));
    }
}
