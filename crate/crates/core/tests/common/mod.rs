//! Brute-force oracles shared by the integration suites. Everything here is
//! written against cell-level definitions only, without the library's
//! closure or containment shortcuts.

#![allow(dead_code)]

use std::collections::BTreeSet;

use essbmf::{BitSet, BooleanMatrix, FormalConcept};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, m: usize, density: f64) -> BooleanMatrix {
    BooleanMatrix::from_fn(n, m, |_, _| rng.gen_bool(density))
}

/// Matrices with 1..=max_n rows and 1..=max_m columns.
pub fn matrix_strategy(max_n: usize, max_m: usize) -> impl Strategy<Value = BooleanMatrix> {
    (1..=max_n, 1..=max_m).prop_flat_map(|(n, m)| {
        proptest::collection::vec(any::<bool>(), n * m)
            .prop_map(move |cells| BooleanMatrix::from_fn(n, m, |i, j| cells[i * m + j]))
    })
}

/// Rows sharing a 1 in every column of `cols`.
fn rows_having(m: &BooleanMatrix, cols: &[usize]) -> Vec<usize> {
    (0..m.n_rows()).filter(|&i| cols.iter().all(|&j| m.get(i, j))).collect()
}

fn cols_having(m: &BooleanMatrix, rows: &[usize]) -> Vec<usize> {
    (0..m.n_cols()).filter(|&j| rows.iter().all(|&i| m.get(i, j))).collect()
}

/// All concepts, found by closing every column subset. Needs `n_cols ≤ 16`.
pub fn brute_concepts(m: &BooleanMatrix) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << m.n_cols()) {
        let cols: Vec<usize> = (0..m.n_cols()).filter(|j| mask >> j & 1 == 1).collect();
        let rows = rows_having(m, &cols);
        out.insert((rows.clone(), cols_having(m, &rows)));
    }
    out
}

pub fn to_concept(m: &BooleanMatrix, c: &(Vec<usize>, Vec<usize>)) -> FormalConcept {
    FormalConcept::new(
        BitSet::from_indices(m.n_rows(), c.0.iter().copied()),
        BitSet::from_indices(m.n_cols(), c.1.iter().copied()),
    )
}

pub fn concept_key(c: &FormalConcept) -> (Vec<usize>, Vec<usize>) {
    (c.extent.to_vec(), c.intent.to_vec())
}

/// Indices (into `concepts`) of the concepts whose rectangle holds cell `(i, j)`.
pub fn cell_members(concepts: &[(Vec<usize>, Vec<usize>)], i: usize, j: usize) -> BTreeSet<usize> {
    concepts
        .iter()
        .enumerate()
        .filter(|(_, c)| c.0.contains(&i) && c.1.contains(&j))
        .map(|(p, _)| p)
        .collect()
}

/// `E(I)` straight from its definition: 1s whose cell interval is minimal
/// among non-empty cell intervals, compared as sets of concepts.
pub fn brute_essential(m: &BooleanMatrix) -> BooleanMatrix {
    let concepts: Vec<_> = brute_concepts(m).into_iter().collect();
    let ones: Vec<(usize, usize)> = m.ones_iter().collect();
    let members: Vec<BTreeSet<usize>> = ones.iter().map(|&(i, j)| cell_members(&concepts, i, j)).collect();
    let mut out = vec![vec![false; m.n_cols()]; m.n_rows()];
    for (p, &(i, j)) in ones.iter().enumerate() {
        let minimal = members
            .iter()
            .all(|other| !(other.is_subset(&members[p]) && other != &members[p]));
        out[i][j] = minimal;
    }
    BooleanMatrix::from_fn(m.n_rows(), m.n_cols(), |i, j| out[i][j])
}

/// Union of the rectangles of `concepts` listed by index.
pub fn cover(m: &BooleanMatrix, concepts: &[FormalConcept]) -> BooleanMatrix {
    BooleanMatrix::from_fn(m.n_rows(), m.n_cols(), |i, j| concepts.iter().any(|c| c.covers(i, j)))
}

/// Cells of a matrix with at most 64 cells, packed row-major into a word.
pub fn cell_mask(n_cols: usize, cells: impl Iterator<Item = (usize, usize)>) -> u64 {
    cells.fold(0, |acc, (i, j)| acc | 1 << (i * n_cols + j))
}

/// Smallest subset of `candidates` whose union equals `m`, trying every
/// subset. `None` if no subset works. Needs at most 64 cells.
pub fn brute_min_cover(m: &BooleanMatrix, candidates: &[FormalConcept]) -> Option<usize> {
    let n = candidates.len();
    assert!(n <= 24, "too many candidates for brute force");
    assert!(m.n_rows() * m.n_cols() <= 64);
    let target = cell_mask(m.n_cols(), m.ones_iter());
    let masks: Vec<u64> = candidates
        .iter()
        .map(|c| cell_mask(m.n_cols(), c.extent.iter().flat_map(|i| c.intent.iter().map(move |j| (i, j)))))
        .collect();
    let mut best: Option<usize> = None;
    for subset in 0u32..(1 << n) {
        let size = subset.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let union = (0..n).filter(|p| subset >> p & 1 == 1).fold(0, |acc, p| acc | masks[p]);
        if union == target {
            best = Some(size);
        }
    }
    best
}

/// Whether rows and columns are pairwise distinct.
pub fn is_clarified(m: &BooleanMatrix) -> bool {
    let rows_distinct = (0..m.n_rows()).all(|a| (0..a).all(|b| m.row(a) != m.row(b)));
    let cols_distinct = (0..m.n_cols()).all(|a| (0..a).all(|b| m.col(a) != m.col(b)));
    rows_distinct && cols_distinct
}
