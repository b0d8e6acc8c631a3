//! Small hand-checkable matrices used throughout the tests and the guide.
//!
//! Rows and columns are 0-based. In the six-object example the columns
//! `a..e` are `0..4` and objects `1..6` are rows `0..5`.

use crate::boolmat::{BooleanMatrix, FactorSet};
use crate::galois::FormalConcept;

/// The 6×5 running example.
pub fn example_matrix() -> BooleanMatrix {
    BooleanMatrix::from_strs(&["11010", "10011", "01100", "00010", "11110", "11001"])
}

/// Four concepts that factorize [`example_matrix`] exactly.
pub fn example_factors() -> FactorSet {
    FactorSet::from_concepts(
        6,
        5,
        vec![
            FormalConcept::from_indices(6, 5, [0, 4, 5], [0, 1]),
            FormalConcept::from_indices(6, 5, [0, 1, 3, 4], [3]),
            FormalConcept::from_indices(6, 5, [1, 5], [0, 4]),
            FormalConcept::from_indices(6, 5, [2, 4], [1, 2]),
        ],
    )
}

/// `A_F` for [`example_factors`].
pub fn example_a() -> BooleanMatrix {
    BooleanMatrix::from_strs(&["1100", "0110", "0001", "0100", "1101", "1010"])
}

/// `B_F` for [`example_factors`].
pub fn example_b() -> BooleanMatrix {
    BooleanMatrix::from_strs(&["11000", "00010", "10001", "01100"])
}

/// Essential part of [`example_matrix`]: seven cells.
pub fn example_essential() -> BooleanMatrix {
    BooleanMatrix::from_strs(&["11000", "00001", "00100", "00010", "00000", "01001"])
}

/// 4×5 matrix of Boolean rank 3 whose essential part has rank 4.
pub fn rank_remark() -> BooleanMatrix {
    BooleanMatrix::from_strs(&["10111", "01101", "01001", "10110"])
}

/// A rank-3 factorization `(A, B)` of [`rank_remark`].
pub fn rank_remark_factors() -> (BooleanMatrix, BooleanMatrix) {
    (
        BooleanMatrix::from_strs(&["110", "011", "001", "100"]),
        BooleanMatrix::from_strs(&["10110", "00101", "01001"]),
    )
}

/// Essential part of [`rank_remark`].
pub fn rank_remark_essential() -> BooleanMatrix {
    BooleanMatrix::from_strs(&["00001", "00100", "01000", "10010"])
}

/// 3×4 matrix whose first column is shared by every row; the concept
/// `⟨all rows, {0}⟩` lies outside the essential concept space.
pub fn shared_column() -> BooleanMatrix {
    BooleanMatrix::from_strs(&["1100", "1010", "1001"])
}
