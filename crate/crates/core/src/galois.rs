//! Galois connection of a Boolean matrix, formal concepts, and intervals of
//! the concept lattice.
//!
//! For a row set `C`, `up(C)` is the set of columns shared by every row in
//! `C`; for a column set `D`, `down(D)` is the set of rows having every column
//! in `D`. A formal concept is a pair `⟨C, D⟩` with `up(C) = D` and
//! `down(D) = C`: a maximal rectangle of 1s.
//!
//! For generators `C` (rows) and `D` (columns) the interval
//! `[γ(C), μ(D)]` collects all concepts whose extent contains `C` and whose
//! intent contains `D`. It is non-empty exactly when `C × D` is all 1s, and
//! for a single cell `(i, j)` it is the set of concepts covering that cell.

use crate::bitset::BitSet;
use crate::boolmat::BooleanMatrix;
use crate::error::{BmfError, Result};

/// A row set paired with a column set.
///
/// Values returned by the functions in this module are closed (formal
/// concepts of the matrix they came from); [`is_concept`] checks closure.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalConcept {
    pub extent: BitSet,
    pub intent: BitSet,
}

impl FormalConcept {
    pub fn new(extent: BitSet, intent: BitSet) -> Self {
        FormalConcept { extent, intent }
    }

    pub fn from_indices(
        n_rows: usize,
        n_cols: usize,
        extent: impl IntoIterator<Item = usize>,
        intent: impl IntoIterator<Item = usize>,
    ) -> Self {
        FormalConcept {
            extent: BitSet::from_indices(n_rows, extent),
            intent: BitSet::from_indices(n_cols, intent),
        }
    }

    /// True iff cell `(i, j)` lies in `extent × intent`.
    #[inline]
    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.extent.contains(i) && self.intent.contains(j)
    }

    /// Lattice order: `self ≤ other` iff `self.extent ⊆ other.extent`.
    pub fn le(&self, other: &FormalConcept) -> bool {
        self.extent.is_subset(&other.extent)
    }

    /// Number of cells in the rectangle.
    pub fn area(&self) -> usize {
        self.extent.count() * self.intent.count()
    }
}

impl std::fmt::Debug for FormalConcept {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "⟨{:?}, {:?}⟩", self.extent, self.intent)
    }
}

/// Alias kept for call sites that read better with the free function.
pub fn concept_covers(c: &FormalConcept, i: usize, j: usize) -> bool {
    c.covers(i, j)
}

/// Validated row set from indices.
pub fn row_set(m: &BooleanMatrix, rows: &[usize]) -> Result<BitSet> {
    indices_to_set(rows, m.n_rows(), "row")
}

/// Validated column set from indices.
pub fn col_set(m: &BooleanMatrix, cols: &[usize]) -> Result<BitSet> {
    indices_to_set(cols, m.n_cols(), "column")
}

fn indices_to_set(idx: &[usize], size: usize, axis: &'static str) -> Result<BitSet> {
    let mut s = BitSet::new(size);
    for &i in idx {
        if i >= size {
            return Err(BmfError::IndexOutOfRange {
                axis,
                index: i,
                size,
            });
        }
        s.insert(i);
    }
    Ok(s)
}

/// Columns shared by all rows in `rows`; all columns when `rows` is empty.
pub fn up(m: &BooleanMatrix, rows: &BitSet) -> BitSet {
    assert_eq!(rows.universe(), m.n_rows(), "row set universe mismatch");
    let mut out = BitSet::full(m.n_cols());
    for i in rows {
        out.intersect_with(m.row(i));
    }
    out
}

/// Rows having all columns in `cols`; all rows when `cols` is empty.
pub fn down(m: &BooleanMatrix, cols: &BitSet) -> BitSet {
    assert_eq!(cols.universe(), m.n_cols(), "column set universe mismatch");
    let mut out = BitSet::full(m.n_rows());
    for j in cols {
        out.intersect_with(m.col(j));
    }
    out
}

/// The concept generated by a row set: `⟨C↑↓, C↑⟩`.
pub fn concept_from_rows(m: &BooleanMatrix, rows: &BitSet) -> FormalConcept {
    let intent = up(m, rows);
    let extent = down(m, &intent);
    FormalConcept { extent, intent }
}

/// The concept generated by a column set: `⟨D↓, D↓↑⟩`.
pub fn concept_from_cols(m: &BooleanMatrix, cols: &BitSet) -> FormalConcept {
    let extent = down(m, cols);
    let intent = up(m, &extent);
    FormalConcept { extent, intent }
}

/// `γ(i)`: the least concept whose extent contains row `i`.
pub fn object_concept(m: &BooleanMatrix, i: usize) -> Result<FormalConcept> {
    Ok(concept_from_rows(m, &row_set(m, &[i])?))
}

/// `μ(j)`: the greatest concept whose intent contains column `j`.
pub fn attribute_concept(m: &BooleanMatrix, j: usize) -> Result<FormalConcept> {
    Ok(concept_from_cols(m, &col_set(m, &[j])?))
}

/// True iff `extent↑ = intent` and `intent↓ = extent`. Pairs sized for a
/// different matrix are not concepts.
pub fn is_concept(m: &BooleanMatrix, c: &FormalConcept) -> bool {
    c.extent.universe() == m.n_rows()
        && c.intent.universe() == m.n_cols()
        && up(m, &c.extent) == c.intent
        && down(m, &c.intent) == c.extent
}

/// All formal concepts in lectic order of their intents.
///
/// Output size can be exponential in `min(n_rows, n_cols)`; see
/// [`enumerate_concepts_capped`] for a bounded variant.
pub fn enumerate_concepts(m: &BooleanMatrix) -> Vec<FormalConcept> {
    enumerate_concepts_capped(m, usize::MAX).expect("uncapped enumeration")
}

/// Like [`enumerate_concepts`], but fails once more than `cap` concepts exist.
pub fn enumerate_concepts_capped(m: &BooleanMatrix, cap: usize) -> Result<Vec<FormalConcept>> {
    let mut out = Vec::new();
    for c in NextClosure::new(m) {
        if out.len() == cap {
            return Err(BmfError::ConceptCapExceeded { cap });
        }
        out.push(c);
    }
    Ok(out)
}

/// Number of concepts, stopping early once `limit` is passed.
pub fn count_concepts_up_to(m: &BooleanMatrix, limit: usize) -> usize {
    NextClosure::new(m).take(limit.saturating_add(1)).count()
}

/// Lectic-order enumeration of closed intents (Ganter's NextClosure).
pub struct NextClosure<'a> {
    m: &'a BooleanMatrix,
    next: Option<FormalConcept>,
}

impl<'a> NextClosure<'a> {
    pub fn new(m: &'a BooleanMatrix) -> Self {
        let first = concept_from_cols(m, &BitSet::new(m.n_cols()));
        NextClosure {
            m,
            next: Some(first),
        }
    }

    fn successor(&self, current: &BitSet) -> Option<FormalConcept> {
        let mut a = current.clone();
        for j in (0..self.m.n_cols()).rev() {
            if a.contains(j) {
                a.remove(j);
                continue;
            }
            // `a` now holds only attributes below `j`.
            let mut gen = a.clone();
            gen.insert(j);
            let cand = concept_from_cols(self.m, &gen);
            // Canonicity: closure adds nothing below j.
            let added_below = cand.intent.difference(&gen).iter().take_while(|&x| x < j).next();
            if added_below.is_none() {
                return Some(cand);
            }
        }
        None
    }
}

impl Iterator for NextClosure<'_> {
    type Item = FormalConcept;

    fn next(&mut self) -> Option<FormalConcept> {
        let cur = self.next.take()?;
        self.next = self.successor(&cur.intent);
        Some(cur)
    }
}

/// `[γ(C), μ(D)]` together with its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lower: FormalConcept,
    pub upper: FormalConcept,
    pub rows: BitSet,
    pub cols: BitSet,
}

impl Interval {
    pub fn is_empty(&self) -> bool {
        !self.lower.le(&self.upper)
    }

    /// Membership test `C ⊆ E` and `D ⊆ F`, valid for concepts of the host matrix.
    pub fn contains(&self, c: &FormalConcept) -> bool {
        !self.is_empty() && self.rows.is_subset(&c.extent) && self.cols.is_subset(&c.intent)
    }
}

/// The interval generated by row set `rows` and column set `cols`.
pub fn interval(m: &BooleanMatrix, rows: &BitSet, cols: &BitSet) -> Interval {
    Interval {
        lower: concept_from_rows(m, rows),
        upper: concept_from_cols(m, cols),
        rows: rows.clone(),
        cols: cols.clone(),
    }
}

/// The interval of a single cell, `I_ij`.
pub fn cell_interval(m: &BooleanMatrix, i: usize, j: usize) -> Result<Interval> {
    Ok(interval(m, &row_set(m, &[i])?, &col_set(m, &[j])?))
}

/// Member concepts of the interval generated by `rows × cols`, computed as
/// the concept lattice of the context restricted to rows `cols↓` and
/// columns `rows↑`. Concepts are reported in host coordinates.
pub fn interval_concepts(m: &BooleanMatrix, rows: &BitSet, cols: &BitSet) -> Result<Vec<FormalConcept>> {
    let shared = up(m, rows);
    if !cols.is_subset(&shared) {
        return Err(BmfError::EmptyInterval);
    }
    let holders = down(m, cols);
    let row_idx = holders.to_vec();
    let col_idx = shared.to_vec();
    let sub = m.permute(&row_idx, &col_idx);
    Ok(enumerate_concepts(&sub)
        .into_iter()
        .map(|c| FormalConcept {
            extent: BitSet::from_indices(m.n_rows(), c.extent.iter().map(|i| row_idx[i])),
            intent: BitSet::from_indices(m.n_cols(), c.intent.iter().map(|j| col_idx[j])),
        })
        .collect())
}

/// `I_ij ⊆ I_i'j'`, i.e. `{i}↑ ⊆ {i'}↑` and `{j}↓ ⊆ {j'}↓`. Both cells must hold 1.
pub fn interval_contained(m: &BooleanMatrix, i: usize, j: usize, i2: usize, j2: usize) -> Result<bool> {
    for (r, c) in [(i, j), (i2, j2)] {
        if r >= m.n_rows() {
            return Err(BmfError::IndexOutOfRange {
                axis: "row",
                index: r,
                size: m.n_rows(),
            });
        }
        if c >= m.n_cols() {
            return Err(BmfError::IndexOutOfRange {
                axis: "column",
                index: c,
                size: m.n_cols(),
            });
        }
        if !m.get(r, c) {
            return Err(BmfError::EmptyInterval);
        }
    }
    Ok(m.row(i).is_subset(m.row(i2)) && m.col(j).is_subset(m.col(j2)))
}
