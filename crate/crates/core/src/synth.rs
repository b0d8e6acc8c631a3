//! Synthetic product matrices and noise injection.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`), seeded from a
//! `u64`. Dataset `d` of a batch uses stream `d` of the master seed, so each
//! dataset can be regenerated on its own and generation order does not
//! matter.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::boolmat::{bool_product, BooleanMatrix};
use crate::error::{BmfError, Result};

/// Name recorded in metadata sidecars.
pub const GENERATOR_NAME: &str = "ChaCha8Rng";

fn check_probability(what: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(BmfError::InvalidParameter(format!("{what} must lie in [0, 1], got {p}")))
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> BooleanMatrix {
    let sets = (0..rows)
        .map(|_| BitSet::from_indices(cols, (0..cols).filter(|_| rng.gen_bool(density))))
        .collect();
    BooleanMatrix::from_row_sets(cols, sets)
}

/// `rows × cols` matrix with each cell independently 1 with probability `density`.
pub fn gen_boolean_matrix(rows: usize, cols: usize, density: f64, seed: u64) -> Result<BooleanMatrix> {
    check_probability("density", density)?;
    Ok(random_matrix(&mut rng_for(seed, 0), rows, cols, density))
}

/// Parameters of a batch of planted product matrices `I = A∘B`.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthSpec {
    pub n_rows: usize,
    pub n_cols: usize,
    pub k_true: usize,
    pub dens_a: f64,
    pub dens_b: f64,
    pub seed: u64,
    pub count: usize,
}

impl SynthSpec {
    /// 300×100, k = 20, densities 0.10 / 0.10.
    pub fn set1(seed: u64, count: usize) -> Self {
        SynthSpec {
            n_rows: 300,
            n_cols: 100,
            k_true: 20,
            dens_a: 0.10,
            dens_b: 0.10,
            seed,
            count,
        }
    }

    /// 500×250, k = 20, densities 0.05 / 0.05. Also the noise-experiment base.
    pub fn set2(seed: u64, count: usize) -> Self {
        SynthSpec {
            n_rows: 500,
            n_cols: 250,
            k_true: 20,
            dens_a: 0.05,
            dens_b: 0.05,
            seed,
            count,
        }
    }

    fn validate(&self) -> Result<()> {
        check_probability("dens_a", self.dens_a)?;
        check_probability("dens_b", self.dens_b)
    }

    /// Expected cell density of `A∘B`: `1 − (1 − dens_a·dens_b)^k`.
    pub fn expected_density(&self) -> f64 {
        1.0 - (1.0 - self.dens_a * self.dens_b).powi(self.k_true as i32)
    }

    /// `key=value` lines for a metadata sidecar.
    pub fn metadata(&self) -> String {
        format!(
            "rows={}\ncols={}\nk={}\ndens_a={}\ndens_b={}\nseed={}\ncount={}\ngenerator={}\n",
            self.n_rows,
            self.n_cols,
            self.k_true,
            self.dens_a,
            self.dens_b,
            self.seed,
            self.count,
            GENERATOR_NAME
        )
    }
}

/// One generated dataset.
#[derive(Clone, Debug, PartialEq)]
pub struct PlantedMatrix {
    pub input: BooleanMatrix,
    pub a: BooleanMatrix,
    pub b: BooleanMatrix,
}

/// Dataset `index` of the batch described by `spec`.
pub fn gen_planted(spec: &SynthSpec, index: usize) -> Result<PlantedMatrix> {
    spec.validate()?;
    let mut rng = rng_for(spec.seed, index as u64);
    let a = random_matrix(&mut rng, spec.n_rows, spec.k_true, spec.dens_a);
    let b = random_matrix(&mut rng, spec.k_true, spec.n_cols, spec.dens_b);
    let input = bool_product(&a, &b)?;
    Ok(PlantedMatrix { input, a, b })
}

/// All `spec.count` datasets. All-zero products are kept.
pub fn gen_dataset(spec: &SynthSpec) -> Result<Vec<PlantedMatrix>> {
    (0..spec.count).map(|d| gen_planted(spec, d)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoiseKind {
    /// Flips 0s to 1s.
    Additive,
    /// Flips 1s to 0s.
    Subtractive,
    /// Flips any cell.
    General,
}

impl std::str::FromStr for NoiseKind {
    type Err = BmfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "additive" => Ok(NoiseKind::Additive),
            "subtractive" => Ok(NoiseKind::Subtractive),
            "general" => Ok(NoiseKind::General),
            other => Err(BmfError::InvalidParameter(format!("unknown noise type {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    pub p: f64,
    pub seed: u64,
}

/// Flips eligible cells independently with probability `spec.p`.
pub fn add_noise(m: &BooleanMatrix, spec: &NoiseSpec) -> Result<BooleanMatrix> {
    add_noise_stream(m, spec, 0)
}

/// [`add_noise`] drawing from stream `stream` of `spec.seed`; batch runs
/// use the dataset index.
pub fn add_noise_stream(m: &BooleanMatrix, spec: &NoiseSpec, stream: u64) -> Result<BooleanMatrix> {
    check_probability("noise level", spec.p)?;
    let mut rng = rng_for(spec.seed, stream);
    Ok(BooleanMatrix::from_fn(m.n_rows(), m.n_cols(), |i, j| {
        let v = m.get(i, j);
        let eligible = match spec.kind {
            NoiseKind::Additive => !v,
            NoiseKind::Subtractive => v,
            NoiseKind::General => true,
        };
        // draw for every cell so the stream does not depend on the input
        let flip = rng.gen_bool(spec.p);
        if eligible && flip {
            !v
        } else {
            v
        }
    }))
}
