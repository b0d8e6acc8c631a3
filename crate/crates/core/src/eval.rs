//! Coverage quality and batch experiments.
//!
//! The coverage quality of the first `l` factors is
//! `c_l = 1 − E(I, A_l∘B_l) / ||I||`: the share of the data the factors
//! explain, penalizing overcovered 0s. An all-zero input is treated as
//! explained by any prefix (`c_l = 1`) and flagged.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::algorithms::{asso, grecon, grecond, greess, AssoParams, FactorizationResult};
use crate::boolmat::{BooleanMatrix, FactorSet};
use crate::error::{BmfError, Result};
use crate::essential::essential_report;
use crate::synth::{add_noise_stream, gen_planted, NoiseSpec, SynthSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct CoverageCurve {
    /// `c_0 ..= c_k`.
    pub values: Vec<f64>,
    pub k: usize,
    /// `c_k = 1`.
    pub exact: bool,
    /// The reference matrix had no 1s.
    pub zero_input: bool,
}

impl CoverageCurve {
    /// `c_l`, holding the last value for `l > k`.
    pub fn at(&self, l: usize) -> f64 {
        self.values[l.min(self.k)]
    }
}

fn check_factors(m: &BooleanMatrix, f: &FactorSet) -> Result<()> {
    if (f.n_rows(), f.n_cols()) != m.shape() {
        return Err(BmfError::DimensionMismatch {
            op: "coverage",
            left: m.shape(),
            right: (f.n_rows(), f.n_cols()),
        });
    }
    Ok(())
}

/// `c_l` for the first `l` factors, by direct recomputation of the product.
pub fn coverage_quality(m: &BooleanMatrix, f: &FactorSet, l: usize) -> Result<f64> {
    check_factors(m, f)?;
    let product = f.prefix_product(l)?;
    let norm = m.count_ones();
    if norm == 0 {
        return Ok(1.0);
    }
    Ok(1.0 - crate::boolmat::error(m, &product)? as f64 / norm as f64)
}

/// `c_0 ..= c_k` from a cumulative cover, without re-multiplying prefixes.
pub fn coverage_curve(m: &BooleanMatrix, f: &FactorSet) -> Result<CoverageCurve> {
    check_factors(m, f)?;
    let scored = FactorizationResult::from_factors(m, f.clone());
    Ok(curve_from_steps(m.count_ones(), &scored.per_step))
}

/// Curve from `(E_u, E_o)` after each factor.
pub fn curve_from_steps(norm: usize, per_step: &[(usize, usize)]) -> CoverageCurve {
    let zero_input = norm == 0;
    let c = |e: usize| {
        if zero_input {
            1.0
        } else {
            1.0 - e as f64 / norm as f64
        }
    };
    let mut values = Vec::with_capacity(per_step.len() + 1);
    values.push(c(norm));
    values.extend(per_step.iter().map(|&(u, o)| c(u + o)));
    let exact = zero_input || per_step.last().map_or(norm == 0, |&(u, o)| u + o == 0);
    CoverageCurve {
        k: per_step.len(),
        values,
        exact,
        zero_input,
    }
}

/// Smallest `l` with `c_l ≥ threshold`, or `None` if never reached.
pub fn factors_for_coverage(curve: &CoverageCurve, threshold: f64) -> Result<Option<usize>> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(BmfError::InvalidParameter(format!(
            "threshold must lie in (0, 1], got {threshold}"
        )));
    }
    Ok(curve.values.iter().position(|&c| c >= threshold))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    GreEss,
    GreConD,
    GreCon,
    Asso,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::GreEss => "greess",
            Algorithm::GreConD => "grecond",
            Algorithm::GreCon => "grecon",
            Algorithm::Asso => "asso",
        }
    }

    pub fn is_from_below(self) -> bool {
        !matches!(self, Algorithm::Asso)
    }
}

impl FromStr for Algorithm {
    type Err = BmfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greess" => Ok(Algorithm::GreEss),
            "grecond" => Ok(Algorithm::GreConD),
            "grecon" => Ok(Algorithm::GreCon),
            "asso" => Ok(Algorithm::Asso),
            other => Err(BmfError::InvalidParameter(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub spec: SynthSpec,
    pub algorithms: Vec<Algorithm>,
    pub noise: Option<NoiseSpec>,
    pub epsilon: usize,
    /// Factor counts at which mean coverage is reported.
    pub k_grid: Vec<usize>,
    pub thresholds: Vec<f64>,
    pub asso: AssoParams,
    pub grecon_cap: usize,
    /// Score coverage against the noise-free matrix instead of the algorithm's input.
    pub against_clean: bool,
    pub threads: usize,
}

impl ExperimentConfig {
    pub fn new(spec: SynthSpec, algorithms: Vec<Algorithm>) -> Self {
        ExperimentConfig {
            spec,
            algorithms,
            noise: None,
            epsilon: 0,
            k_grid: vec![5, 10, 15, 20, 25],
            thresholds: vec![0.25, 0.5, 0.75, 1.0],
            asso: AssoParams::new(30),
            grecon_cap: crate::algorithms::DEFAULT_GRECON_CONCEPT_CAP,
            against_clean: false,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EssentialRow {
    pub dataset: usize,
    pub ones_input: usize,
    pub ones_essential: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    /// One curve per dataset, in dataset order.
    pub curves: Vec<CoverageCurve>,
    /// Per-`l` mean over datasets; shorter curves hold their last value.
    pub mean_curve: Vec<f64>,
    pub at_k: Vec<(usize, f64)>,
    pub thresholds: Vec<(f64, Option<usize>)>,
    pub mean_factors: f64,
    pub all_exact: bool,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub algorithms: Vec<AlgorithmSummary>,
    pub essential: Vec<EssentialRow>,
    pub mean_essential_ratio: f64,
    pub mean_density: f64,
    /// Datasets whose input had no 1s.
    pub zero_datasets: usize,
}

impl ExperimentReport {
    pub fn summary(&self, algorithm: Algorithm) -> Option<&AlgorithmSummary> {
        self.algorithms.iter().find(|s| s.algorithm == algorithm)
    }
}

struct DatasetOutcome {
    essential: EssentialRow,
    density: f64,
    curves: Vec<(CoverageCurve, Duration)>,
}

fn run_algorithm(cfg: &ExperimentConfig, alg: Algorithm, input: &BooleanMatrix) -> Result<FactorSet> {
    Ok(match alg {
        Algorithm::GreEss => greess(input, cfg.epsilon)?.factors,
        Algorithm::GreConD => grecond(input, cfg.epsilon, None).factors,
        Algorithm::GreCon => grecon(input, cfg.epsilon, cfg.grecon_cap)?.factors,
        Algorithm::Asso => asso(input, &cfg.asso)?.result.factors,
    })
}

fn run_dataset(cfg: &ExperimentConfig, d: usize) -> Result<DatasetOutcome> {
    let planted = gen_planted(&cfg.spec, d)?;
    let clean = planted.input;
    let input = match &cfg.noise {
        Some(n) => add_noise_stream(&clean, n, d as u64)?,
        None => clean.clone(),
    };
    let reference = if cfg.against_clean { &clean } else { &input };
    let rep = essential_report(&input);
    let cells = (input.n_rows() * input.n_cols()).max(1);
    let mut curves = Vec::with_capacity(cfg.algorithms.len());
    for &alg in &cfg.algorithms {
        let start = Instant::now();
        let factors = run_algorithm(cfg, alg, &input)?;
        let elapsed = start.elapsed();
        curves.push((coverage_curve(reference, &factors)?, elapsed));
    }
    Ok(DatasetOutcome {
        essential: EssentialRow {
            dataset: d,
            ones_input: rep.ones_input,
            ones_essential: rep.ones_essential,
            ratio: rep.ratio,
        },
        density: input.count_ones() as f64 / cells as f64,
        curves,
    })
}

/// Generates `cfg.spec.count` datasets, runs every algorithm on each, and
/// aggregates per-`l` means. Datasets may be processed on several threads;
/// aggregation always runs in dataset order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if cfg.spec.count == 0 {
        return Err(BmfError::InvalidParameter("experiment needs at least one dataset".into()));
    }
    for &t in &cfg.thresholds {
        if !(t > 0.0 && t <= 1.0) {
            return Err(BmfError::InvalidParameter(format!("threshold {t} outside (0, 1]")));
        }
    }
    let count = cfg.spec.count;
    let threads = cfg.threads.clamp(1, count);
    let mut slots: Vec<Option<Result<DatasetOutcome>>> = (0..count).map(|_| None).collect();
    std::thread::scope(|scope| {
        let chunk = count.div_ceil(threads);
        for (t, part) in slots.chunks_mut(chunk).enumerate() {
            scope.spawn(move || {
                for (off, slot) in part.iter_mut().enumerate() {
                    *slot = Some(run_dataset(cfg, t * chunk + off));
                }
            });
        }
    });
    let outcomes: Vec<DatasetOutcome> = slots
        .into_iter()
        .map(|s| s.expect("every dataset processed"))
        .collect::<Result<_>>()?;

    let n = count as f64;
    let essential: Vec<EssentialRow> = outcomes.iter().map(|o| o.essential.clone()).collect();
    let mean_essential_ratio = essential.iter().map(|e| e.ratio).sum::<f64>() / n;
    let mean_density = outcomes.iter().map(|o| o.density).sum::<f64>() / n;
    let zero_datasets = essential.iter().filter(|e| e.ones_input == 0).count();

    let mut algorithms = Vec::new();
    for (a_idx, &alg) in cfg.algorithms.iter().enumerate() {
        let curves: Vec<CoverageCurve> = outcomes.iter().map(|o| o.curves[a_idx].0.clone()).collect();
        let elapsed = outcomes.iter().map(|o| o.curves[a_idx].1).sum();
        let mean_curve = mean_curve(&curves);
        let at_k = cfg
            .k_grid
            .iter()
            .map(|&k| (k, mean_curve[k.min(mean_curve.len() - 1)]))
            .collect();
        let mean_as_curve = CoverageCurve {
            k: mean_curve.len() - 1,
            exact: curves.iter().all(|c| c.exact),
            values: mean_curve.clone(),
            zero_input: false,
        };
        let thresholds = cfg
            .thresholds
            .iter()
            .map(|&t| Ok((t, factors_for_coverage(&mean_as_curve, t)?)))
            .collect::<Result<_>>()?;
        algorithms.push(AlgorithmSummary {
            algorithm: alg,
            mean_factors: curves.iter().map(|c| c.k as f64).sum::<f64>() / n,
            all_exact: mean_as_curve.exact,
            curves,
            mean_curve,
            at_k,
            thresholds,
            elapsed,
        });
    }

    Ok(ExperimentReport {
        algorithms,
        essential,
        mean_essential_ratio,
        mean_density,
        zero_datasets,
    })
}

/// Per-`l` arithmetic mean, summing in curve order.
pub fn mean_curve(curves: &[CoverageCurve]) -> Vec<f64> {
    let len = curves.iter().map(|c| c.k + 1).max().unwrap_or(1);
    let n = curves.len().max(1) as f64;
    (0..len)
        .map(|l| curves.iter().map(|c| c.at(l)).sum::<f64>() / n)
        .collect()
}

/// `algorithm,l,mean_coverage`
pub fn curve_csv(report: &ExperimentReport) -> String {
    let mut s = String::from("algorithm,l,mean_coverage\n");
    for a in &report.algorithms {
        for (l, c) in a.mean_curve.iter().enumerate() {
            writeln!(s, "{},{},{:.4}", a.algorithm.name(), l, c).unwrap();
        }
    }
    s
}

/// `algorithm,threshold,factors`; an unreached threshold leaves the field empty.
pub fn thresholds_csv(report: &ExperimentReport) -> String {
    let mut s = String::from("algorithm,threshold,factors\n");
    for a in &report.algorithms {
        for &(t, f) in &a.thresholds {
            let f = f.map(|v| v.to_string()).unwrap_or_default();
            writeln!(s, "{},{:.4},{}", a.algorithm.name(), t, f).unwrap();
        }
    }
    s
}

/// `dataset,ones_I,ones_E,ratio`
pub fn essential_csv(report: &ExperimentReport) -> String {
    let mut s = String::from("dataset,ones_I,ones_E,ratio\n");
    for e in &report.essential {
        writeln!(s, "{},{},{},{:.4}", e.dataset, e.ones_input, e.ones_essential, e.ratio).unwrap();
    }
    s
}
