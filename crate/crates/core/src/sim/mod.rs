//! Finite-shot simulation of MUB tomography and statistical estimation.
//!
//! Sampling uses ChaCha20 seeded from the 64-bit `seed`, with basis `a`
//! drawn on stream `a`. Each basis is an independent multinomial realized
//! as a chain of binomials over `α = 0..d`, so the result does not depend
//! on the order (or thread) in which bases are processed.

mod stern_gerlach;

pub use stern_gerlach::{
    check_mub_condition, random_su2_family, stern_gerlach_bases, su2_family_search, wigner_d, wigner_small_d,
    SternGerlachConfig, Su2SearchReport, UNITARITY_TOL,
};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{trace_distance, ComplexMatrix, DensityMatrix, Tolerances};
use crate::mub::MubSet;
use crate::tomography::{reconstruct, scan, Tomogram};

/// Largest deviation of the Born probabilities' sum from 1 that sampling silently renormalizes.
pub const BORN_RENORMALIZE_TOL: f64 = 1e-10;

/// Outcome counts of `shots_per_basis` measurements in each of the `d+1` bases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRecord")]
pub struct MeasurementRecord {
    dim: usize,
    shots_per_basis: u64,
    /// `counts[a][α]`.
    counts: Vec<Vec<u64>>,
    seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    dim: usize,
    shots_per_basis: u64,
    counts: Vec<Vec<u64>>,
    seed: u64,
}

impl TryFrom<RawRecord> for MeasurementRecord {
    type Error = Error;

    fn try_from(r: RawRecord) -> Result<Self> {
        MeasurementRecord::new(r.dim, r.shots_per_basis, r.counts, r.seed)
    }
}

impl MeasurementRecord {
    pub fn new(dim: usize, shots_per_basis: u64, counts: Vec<Vec<u64>>, seed: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::shape("dimension must be positive"));
        }
        if shots_per_basis == 0 {
            return Err(Error::validity("shots per basis must be positive"));
        }
        if counts.len() != dim + 1 {
            return Err(Error::shape(format!("expected {} count rows, got {}", dim + 1, counts.len())));
        }
        for (a, row) in counts.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::shape(format!("count row {a} has {} entries, expected {dim}", row.len())));
            }
            let total: u64 = row.iter().sum();
            if total != shots_per_basis {
                return Err(Error::validity(format!("count row {a} sums to {total}, expected {shots_per_basis}")));
            }
        }
        Ok(MeasurementRecord { dim, shots_per_basis, counts, seed })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shots_per_basis(&self) -> u64 {
        self.shots_per_basis
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

fn basis_rng(seed: u64, basis: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(basis as u64);
    rng
}

/// Multinomial draw of `shots` outcomes from `probs` (non-negative, summing to 1).
fn multinomial(shots: u64, probs: &[f64], rng: &mut ChaCha20Rng) -> Vec<u64> {
    let mut out = vec![0; probs.len()];
    let mut remaining = shots;
    let mut mass = 1.0;
    for (k, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if k + 1 == probs.len() {
            out[k] = remaining;
            break;
        }
        let q = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 0.0 };
        let n = Binomial::new(remaining, q).expect("probability in [0, 1]").sample(rng);
        out[k] = n;
        remaining -= n;
        mass -= p;
    }
    out
}

/// Simulates `shots` projective measurements of `state` in every basis of `set`.
pub fn sample(state: &DensityMatrix, set: &MubSet, shots: u64, seed: u64) -> Result<MeasurementRecord> {
    let d = set.dim();
    if state.dim() != d {
        return Err(Error::shape(format!("state dimension {} does not match MUB dimension {d}", state.dim())));
    }
    if shots == 0 {
        return Err(Error::validity("shots per basis must be positive"));
    }
    let tom = scan(state, set, &Tolerances::default())?;
    let mut rows = Vec::with_capacity(d + 1);
    for (a, row) in tom.rows().into_iter().enumerate() {
        let clipped: Vec<f64> = row.iter().map(|&p| p.max(0.0)).collect();
        let total: f64 = clipped.iter().sum();
        if (total - 1.0).abs() > BORN_RENORMALIZE_TOL {
            return Err(Error::validity(format!("Born probabilities of basis {a} sum to {total}, not 1")));
        }
        rows.push(clipped.iter().map(|p| p / total).collect::<Vec<f64>>());
    }
    let counts = rows
        .par_iter()
        .enumerate()
        .map(|(a, probs)| multinomial(shots, probs, &mut basis_rng(seed, a)))
        .collect();
    MeasurementRecord::new(d, shots, counts, seed)
}

/// `p̂_{aα} = counts_{aα} / N`.
pub fn frequencies(record: &MeasurementRecord) -> Tomogram {
    let n = record.shots_per_basis as f64;
    let probs = record.counts.iter().flatten().map(|&c| c as f64 / n).collect();
    Tomogram::from_flat(record.dim, probs).expect("record shape checked at construction")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Repair {
    /// Plain linear inversion; the result may fail positivity.
    #[default]
    None,
    /// Eigenvalue clipping at zero followed by trace renormalization.
    Project,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub matrix: ComplexMatrix,
    pub repair: Repair,
    pub min_eigenvalue_before: f64,
    /// Trace distance between the linear-inversion result and `matrix`.
    pub trace_distance_moved: f64,
}

impl Estimate {
    pub fn density_matrix(&self, tol: &Tolerances) -> Result<DensityMatrix> {
        DensityMatrix::new(self.matrix.clone(), tol)
    }
}

/// Linear inversion of the empirical frequencies, optionally repaired to a state.
pub fn estimate(record: &MeasurementRecord, set: &MubSet, repair: Repair) -> Result<Estimate> {
    if record.dim != set.dim() {
        return Err(Error::shape(format!(
            "record dimension {} does not match MUB dimension {}",
            record.dim,
            set.dim()
        )));
    }
    estimate_from_tomogram(&frequencies(record), set, repair)
}

/// As [`estimate`], starting from any tomogram (for instance an exact one).
pub fn estimate_from_tomogram(tom: &Tomogram, set: &MubSet, repair: Repair) -> Result<Estimate> {
    let linear = reconstruct(tom, set, &Tolerances::default())?;
    let matrix = match repair {
        Repair::None => linear.matrix.clone(),
        Repair::Project => project_to_density_matrix(&linear.matrix)?.into_matrix(),
    };
    let trace_distance_moved = trace_distance(&linear.matrix, &matrix)?;
    Ok(Estimate { matrix, repair, min_eigenvalue_before: linear.min_eigenvalue, trace_distance_moved })
}

/// Clips negative eigenvalues of the Hermitian part to zero and rescales to unit trace.
/// A matrix with no positive spectrum maps to the maximally mixed state.
pub fn project_to_density_matrix(m: &ComplexMatrix) -> Result<DensityMatrix> {
    let (values, vectors) = m.hermitian_part().hermitian_eigen(f64::INFINITY)?;
    let d = values.len();
    let clipped: Vec<f64> = values.iter().map(|&v| v.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    if total <= 0.0 || !total.is_finite() {
        return Ok(DensityMatrix::maximally_mixed(d));
    }
    let mut out = ComplexMatrix::zeros(d, d);
    for (k, &lambda) in clipped.iter().enumerate() {
        if lambda == 0.0 {
            continue;
        }
        let v = vectors.column(k);
        let w = Complex64::new(lambda / total, 0.0);
        out.add_scaled_in_place(w, &crate::linalg::outer_raw(&v));
    }
    Ok(DensityMatrix::from_trusted(out.hermitian_part()))
}
