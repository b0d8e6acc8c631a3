//! Boolean matrices and their algebra.
//!
//! [`BooleanMatrix`] is immutable once built and keeps two bit-packed views:
//! one [`BitSet`] per row (over columns) and one per column (over rows). The
//! Galois operators intersect along both axes, so both views are stored.

use std::fmt;

use crate::bitset::BitSet;
use crate::error::{BmfError, Result};
use crate::galois::FormalConcept;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<BitSet>,
    cols: Vec<BitSet>,
}

impl BooleanMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self::from_row_sets(n_cols, vec![BitSet::new(n_cols); n_rows])
    }

    pub fn ones(n_rows: usize, n_cols: usize) -> Self {
        Self::from_row_sets(n_cols, vec![BitSet::full(n_cols); n_rows])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i == j)
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let rows = (0..n_rows)
            .map(|i| BitSet::from_indices(n_cols, (0..n_cols).filter(|&j| f(i, j))))
            .collect();
        Self::from_row_sets(n_cols, rows)
    }

    /// Builds a matrix from row bitsets; each must have universe `n_cols`.
    pub fn from_row_sets(n_cols: usize, rows: Vec<BitSet>) -> Self {
        let n_rows = rows.len();
        let mut cols = vec![BitSet::new(n_rows); n_cols];
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.universe(), n_cols, "row {i} has wrong width");
            for j in r {
                cols[j].insert(i);
            }
        }
        BooleanMatrix {
            n_rows,
            n_cols,
            rows,
            cols,
        }
    }

    /// Builds a matrix from string rows such as `"10110"`. Spaces are ignored.
    ///
    /// Panics on anything other than `0`, `1`, or space, and on ragged rows.
    /// Intended for literals in tests and examples.
    pub fn from_strs(rows: &[&str]) -> Self {
        let parsed: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| {
                r.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => false,
                        '1' => true,
                        _ => panic!("bad cell {c:?}"),
                    })
                    .collect()
            })
            .collect();
        let n_cols = parsed.first().map_or(0, Vec::len);
        assert!(parsed.iter().all(|r| r.len() == n_cols), "ragged rows");
        Self::from_fn(parsed.len(), n_cols, |i, j| parsed[i][j])
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.n_rows, self.n_cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    /// Row `i` as the set of columns holding a 1.
    #[inline]
    pub fn row(&self, i: usize) -> &BitSet {
        &self.rows[i]
    }

    /// Column `j` as the set of rows holding a 1.
    #[inline]
    pub fn col(&self, j: usize) -> &BitSet {
        &self.cols[j]
    }

    pub fn row_sets(&self) -> &[BitSet] {
        &self.rows
    }

    pub fn col_sets(&self) -> &[BitSet] {
        &self.cols
    }

    /// Number of 1s.
    pub fn count_ones(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitSet::is_empty)
    }

    pub fn transpose(&self) -> Self {
        BooleanMatrix {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    /// Cells holding a 1, row by row.
    pub fn ones_iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |j| (i, j)))
    }

    /// Cellwise maximum.
    pub fn union(&self, other: &Self) -> Result<Self> {
        check_same_shape("union", self, other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.union(b))
            .collect();
        Ok(Self::from_row_sets(self.n_cols, rows))
    }

    /// Reorders rows and columns: result cell `(i, j)` is `self[row_perm[i]][col_perm[j]]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        Self::from_fn(row_perm.len(), col_perm.len(), |i, j| {
            self.get(row_perm[i], col_perm[j])
        })
    }
}

impl fmt::Debug for BooleanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BooleanMatrix {}x{} [", self.n_rows, self.n_cols)?;
        for r in &self.rows {
            let line: String = (0..self.n_cols)
                .map(|j| if r.contains(j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        write!(f, "]")
    }
}

fn check_same_shape(op: &'static str, a: &BooleanMatrix, b: &BooleanMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(BmfError::DimensionMismatch {
            op,
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(())
}

/// Boolean product `(A∘B)_ij = max_l min(A_il, B_lj)`.
pub fn bool_product(a: &BooleanMatrix, b: &BooleanMatrix) -> Result<BooleanMatrix> {
    if a.n_cols != b.n_rows {
        return Err(BmfError::DimensionMismatch {
            op: "bool_product",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let rows = a
        .rows
        .iter()
        .map(|ar| {
            let mut out = BitSet::new(b.n_cols);
            for l in ar {
                out.union_with(&b.rows[l]);
            }
            out
        })
        .collect();
    Ok(BooleanMatrix::from_row_sets(b.n_cols, rows))
}

/// Number of 1s in `c`.
pub fn hamming_norm(c: &BooleanMatrix) -> usize {
    c.count_ones()
}

/// Number of cells where `c` and `d` differ.
pub fn error(c: &BooleanMatrix, d: &BooleanMatrix) -> Result<usize> {
    let (u, o) = error_split(c, d)?;
    Ok(u + o)
}

/// Splits `error(input, approx)` into uncovered and overcovered cells:
/// `(|input ∧ ¬approx|, |¬input ∧ approx|)`.
pub fn error_split(input: &BooleanMatrix, approx: &BooleanMatrix) -> Result<(usize, usize)> {
    check_same_shape("error_split", input, approx)?;
    let mut uncovered = 0;
    let mut overcovered = 0;
    for (a, b) in input.rows.iter().zip(&approx.rows) {
        for (x, y) in a.words().iter().zip(b.words()) {
            uncovered += (x & !y).count_ones() as usize;
            overcovered += (!x & y).count_ones() as usize;
        }
    }
    Ok((uncovered, overcovered))
}

/// `j1 ≤ j2` cellwise.
pub fn contained(j1: &BooleanMatrix, j2: &BooleanMatrix) -> Result<bool> {
    check_same_shape("contained", j1, j2)?;
    Ok(j1.rows.iter().zip(&j2.rows).all(|(a, b)| a.is_subset(b)))
}

/// Result of [`clarify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clarified {
    pub matrix: BooleanMatrix,
    /// `row_map[i]` is the row of `matrix` that stands for original row `i`.
    pub row_map: Vec<usize>,
    pub col_map: Vec<usize>,
}

fn first_occurrences(sets: &[BitSet]) -> (Vec<usize>, Vec<usize>) {
    let mut kept: Vec<usize> = Vec::new();
    let mut map = Vec::with_capacity(sets.len());
    let mut seen = std::collections::HashMap::new();
    for (idx, s) in sets.iter().enumerate() {
        let slot = *seen.entry(s).or_insert_with(|| {
            kept.push(idx);
            kept.len() - 1
        });
        map.push(slot);
    }
    (kept, map)
}

/// Removes duplicate rows, then duplicate columns, keeping first occurrences.
pub fn clarify(input: &BooleanMatrix) -> Clarified {
    let (kept_rows, row_map) = first_occurrences(&input.rows);
    let rows_only = input.permute(&kept_rows, &(0..input.n_cols).collect::<Vec<_>>());
    let (kept_cols, col_map) = first_occurrences(&rows_only.cols);
    let matrix = rows_only.permute(&(0..rows_only.n_rows).collect::<Vec<_>>(), &kept_cols);
    Clarified {
        matrix,
        row_map,
        col_map,
    }
}

/// Ordered list of factors over an `n_rows × n_cols` host matrix.
///
/// Each factor is a row set paired with a column set. Factors produced by the
/// from-below algorithms are formal concepts of the host matrix; factors
/// produced by Asso are arbitrary rectangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    n_rows: usize,
    n_cols: usize,
    factors: Vec<FormalConcept>,
}

impl FactorSet {
    pub fn new(n_rows: usize, n_cols: usize) -> Self {
        FactorSet {
            n_rows,
            n_cols,
            factors: Vec::new(),
        }
    }

    pub fn from_concepts(n_rows: usize, n_cols: usize, factors: Vec<FormalConcept>) -> Self {
        let mut fs = FactorSet::new(n_rows, n_cols);
        for c in factors {
            fs.push(c);
        }
        fs
    }

    pub fn push(&mut self, c: FormalConcept) {
        assert_eq!(c.extent.universe(), self.n_rows, "extent universe mismatch");
        assert_eq!(c.intent.universe(), self.n_cols, "intent universe mismatch");
        self.factors.push(c);
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn concepts(&self) -> &[FormalConcept] {
        &self.factors
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FormalConcept> {
        self.factors.iter()
    }

    /// `A_F ∘ B_F` for the first `l` factors, assembled directly from the rectangles.
    pub fn prefix_product(&self, l: usize) -> Result<BooleanMatrix> {
        if l > self.len() {
            return Err(BmfError::PrefixTooLong {
                requested: l,
                available: self.len(),
            });
        }
        let mut rows = vec![BitSet::new(self.n_cols); self.n_rows];
        for c in &self.factors[..l] {
            for i in &c.extent {
                rows[i].union_with(&c.intent);
            }
        }
        Ok(BooleanMatrix::from_row_sets(self.n_cols, rows))
    }

    pub fn product(&self) -> BooleanMatrix {
        self.prefix_product(self.len()).expect("full prefix")
    }
}

/// `A_F` (n×l) and `B_F` (l×m) for the first `l` factors: column/row `p` are
/// the characteristic vectors of the `p`-th extent/intent.
pub fn factors_to_matrices(f: &FactorSet, l: usize) -> Result<(BooleanMatrix, BooleanMatrix)> {
    if l > f.len() {
        return Err(BmfError::PrefixTooLong {
            requested: l,
            available: f.len(),
        });
    }
    let prefix = &f.factors[..l];
    let a = BooleanMatrix::from_fn(f.n_rows, l, |i, p| prefix[p].extent.contains(i));
    let b = BooleanMatrix::from_row_sets(f.n_cols, prefix.iter().map(|c| c.intent.clone()).collect());
    Ok((a, b))
}

/// Splits `A∘B` into its `k` rank-one rectangles `A_{_l} ∘ B_{l_}`.
pub fn factorization_as_rectangles(
    a: &BooleanMatrix,
    b: &BooleanMatrix,
) -> Result<Vec<BooleanMatrix>> {
    if a.n_cols != b.n_rows {
        return Err(BmfError::DimensionMismatch {
            op: "factorization_as_rectangles",
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok((0..a.n_cols)
        .map(|l| {
            let rows = (0..a.n_rows)
                .map(|i| {
                    if a.get(i, l) {
                        b.rows[l].clone()
                    } else {
                        BitSet::new(b.n_cols)
                    }
                })
                .collect();
            BooleanMatrix::from_row_sets(b.n_cols, rows)
        })
        .collect())
}

/// Splits `(A, B)` into row/column set pairs, one per inner index.
pub fn matrices_to_factors(a: &BooleanMatrix, b: &BooleanMatrix) -> Result<FactorSet> {
    if a.n_cols != b.n_rows {
        return Err(BmfError::DimensionMismatch {
            op: "matrices_to_factors",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let mut fs = FactorSet::new(a.n_rows, b.n_cols);
    for l in 0..a.n_cols {
        fs.push(FormalConcept::new(a.col(l).clone(), b.row(l).clone()));
    }
    Ok(fs)
}
