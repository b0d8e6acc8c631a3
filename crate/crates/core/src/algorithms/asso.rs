//! Asso: basis vectors from an association matrix of column rules.
//!
//! Row `j` of the association matrix marks the columns `j'` for which the
//! rule `{j} ⇒ {j'}` has confidence `|{j, j'}↓| / |{j}↓| ≥ τ`. Those rows are
//! the candidate basis vectors. Each round picks the unused candidate with
//! the largest weighted cover gain; object `i` uses it iff doing so adds more
//! reward (`w⁺` per newly covered 1) than penalty (`w⁻` per newly covered 0).

use crate::bitset::BitSet;
use crate::boolmat::{matrices_to_factors, BooleanMatrix};
use crate::error::{BmfError, Result};

use super::FactorizationResult;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AssoParams {
    pub k: usize,
    pub tau: f64,
    pub w_plus: f64,
    pub w_minus: f64,
}

impl AssoParams {
    pub fn new(k: usize) -> Self {
        AssoParams {
            k,
            tau: 0.85,
            w_plus: 1.0,
            w_minus: 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(BmfError::InvalidParameter("asso needs k >= 1".into()));
        }
        if !(self.tau > 0.0 && self.tau <= 1.0) {
            return Err(BmfError::InvalidParameter(format!(
                "tau must lie in (0, 1], got {}",
                self.tau
            )));
        }
        if !(self.w_plus >= 0.0 && self.w_minus >= 0.0) {
            return Err(BmfError::InvalidParameter("weights must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssoOutput {
    /// Usage matrix, `n × k'` with `k' ≤ k`.
    pub a: BooleanMatrix,
    /// Basis matrix, `k' × m`.
    pub b: BooleanMatrix,
    pub result: FactorizationResult,
    /// Weighted cover gain of each chosen factor.
    pub gains: Vec<f64>,
}

/// The `m × m` association matrix for threshold `tau`.
pub fn association_matrix(m: &BooleanMatrix, tau: f64) -> BooleanMatrix {
    let rows = (0..m.n_cols())
        .map(|j| {
            let support = m.col(j).count();
            if support == 0 {
                return BitSet::new(m.n_cols());
            }
            BitSet::from_indices(
                m.n_cols(),
                (0..m.n_cols()).filter(|&j2| {
                    m.col(j).intersection_count(m.col(j2)) as f64 / support as f64 >= tau
                }),
            )
        })
        .collect();
    BooleanMatrix::from_row_sets(m.n_cols(), rows)
}

/// Best usage column for `basis` given what is already covered.
fn usage_for(
    m: &BooleanMatrix,
    covered: &[BitSet],
    basis: &BitSet,
    params: &AssoParams,
) -> (f64, BitSet) {
    let mut usage = BitSet::new(m.n_rows());
    let mut total = 0.0;
    for (i, row_cover) in covered.iter().enumerate().take(m.n_rows()) {
        let fresh = basis.difference(row_cover);
        let ones = fresh.intersection_count(m.row(i));
        let zeros = fresh.count() - ones;
        let gain = params.w_plus * ones as f64 - params.w_minus * zeros as f64;
        if gain > 0.0 {
            usage.insert(i);
            total += gain;
        }
    }
    (total, usage)
}

/// Runs Asso for up to `params.k` factors. Stops early when no remaining
/// candidate has positive gain, so `a` may have fewer than `k` columns.
pub fn asso(m: &BooleanMatrix, params: &AssoParams) -> Result<AssoOutput> {
    params.validate()?;
    let assoc = association_matrix(m, params.tau);
    let mut covered = vec![BitSet::new(m.n_cols()); m.n_rows()];

    // Candidates in descending order of initial cover, stable by index.
    let mut candidates: Vec<(usize, f64)> = (0..m.n_cols())
        .map(|j| (j, usage_for(m, &covered, assoc.row(j), params).0))
        .collect();
    candidates.sort_by(|x, y| y.1.total_cmp(&x.1));
    let mut order: Vec<usize> = candidates.into_iter().map(|(j, _)| j).collect();

    let mut usages = Vec::new();
    let mut bases = Vec::new();
    let mut gains = Vec::new();
    while usages.len() < params.k && !order.is_empty() {
        let mut best: Option<(usize, f64, BitSet)> = None;
        for (pos, &j) in order.iter().enumerate() {
            let (g, usage) = usage_for(m, &covered, assoc.row(j), params);
            if best.as_ref().is_none_or(|b| g > b.1) {
                best = Some((pos, g, usage));
            }
        }
        let Some((pos, g, usage)) = best else { break };
        if g <= 0.0 {
            break;
        }
        let j = order.remove(pos);
        for i in &usage {
            covered[i].union_with(assoc.row(j));
        }
        usages.push(usage);
        bases.push(assoc.row(j).clone());
        gains.push(g);
    }

    let k = usages.len();
    let a = BooleanMatrix::from_fn(m.n_rows(), k, |i, l| usages[l].contains(i));
    let b = BooleanMatrix::from_row_sets(m.n_cols(), bases);
    let result = FactorizationResult::from_factors(m, matrices_to_factors(&a, &b)?);
    Ok(AssoOutput { a, b, result, gains })
}
