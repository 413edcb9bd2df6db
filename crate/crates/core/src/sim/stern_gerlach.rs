//! Spin-j Stern-Gerlach model: bases `|aα⟩ = û_a |j, m = α − j⟩`.
//!
//! Spin states are stored with rows ordered `m = j, j−1, …, −j`, so
//! `|j, m⟩` is the computational vector `e_{j−m}` and `|j, α − j⟩ = e_{d−1−α}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, ComplexMatrix};
use crate::mub::{grid_len, CompositeIndex, MubSet};
use crate::report::{CheckReport, SweepPlan, ViolationTracker};

pub const UNITARITY_TOL: f64 = 1e-12;

/// The `d + 1` unitaries applied after preparing a spin-z eigenstate.
#[derive(Debug, Clone, PartialEq)]
pub struct SternGerlachConfig {
    dim: usize,
    unitaries: Vec<ComplexMatrix>,
}

impl SternGerlachConfig {
    pub fn new(unitaries: Vec<ComplexMatrix>) -> Result<Self> {
        let first = unitaries.first().ok_or_else(|| Error::shape("no unitaries given"))?;
        let dim = first.rows();
        if dim == 0 {
            return Err(Error::shape("dimension must be positive"));
        }
        if unitaries.len() != dim + 1 {
            return Err(Error::shape(format!("expected {} unitaries for dimension {dim}, got {}", dim + 1, unitaries.len())));
        }
        for (a, u) in unitaries.iter().enumerate() {
            if u.rows() != dim || u.cols() != dim {
                return Err(Error::shape(format!("unitary {a} is {}x{}, expected {dim}x{dim}", u.rows(), u.cols())));
            }
            let defect = u.unitarity_defect();
            if defect.is_nan() || defect > UNITARITY_TOL {
                return Err(Error::validity(format!("unitary {a} has defect {defect:e} > {UNITARITY_TOL:e}")));
            }
        }
        Ok(SternGerlachConfig { dim, unitaries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `2j = d − 1`.
    pub fn two_j(&self) -> usize {
        self.dim - 1
    }

    pub fn unitaries(&self) -> &[ComplexMatrix] {
        &self.unitaries
    }
}

/// Candidate bases; no unbiasedness is asserted.
pub fn stern_gerlach_bases(config: &SternGerlachConfig) -> MubSet {
    let d = config.dim;
    let bases = config
        .unitaries
        .iter()
        .map(|u| (0..d).map(|alpha| u.column(d - 1 - alpha)).collect())
        .collect();
    MubSet::from_bases(d, bases).expect("shape fixed by config")
}

/// Max over all pairs of `| |⟨aα|bβ⟩|² − (1 − δ_ab)/d − δ_ab δ_αβ |`.
pub fn check_mub_condition(candidate: &MubSet, tol: f64) -> CheckReport {
    let d = candidate.dim();
    let n = grid_len(d);
    let mut tracker = ViolationTracker::new(d);
    for x in 0..n {
        let xi = CompositeIndex::from_flat(x, d);
        for y in 0..n {
            let yi = CompositeIndex::from_flat(y, d);
            let got = inner(candidate.vector(xi.basis, xi.state), candidate.vector(yi.basis, yi.state)).norm_sqr();
            let want = if xi.basis != yi.basis {
                1.0 / d as f64
            } else if xi.state == yi.state {
                1.0
            } else {
                0.0
            };
            tracker.record((got - want).abs(), &[x, y]);
        }
    }
    tracker.finish("stern_gerlach_mub_condition", tol, (n * n) as u64, SweepPlan::Exhaustive)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Wigner small-d matrix `d^j_{m'm}(β)`, rows `m'` and columns `m` both ordered `j..−j`.
pub fn wigner_small_d(two_j: usize, beta: f64) -> ComplexMatrix {
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    ComplexMatrix::from_fn(two_j + 1, two_j + 1, |r, col| {
        // j+m' = 2j−r, j−m' = r, j+m = 2j−col, j−m = col, m'−m = col−r.
        let pref = (factorial(two_j - r) * factorial(r) * factorial(two_j - col) * factorial(col)).sqrt();
        let lo = r.saturating_sub(col);
        let hi = r.min(two_j - col);
        let mut acc = 0.0;
        for k in lo..=hi {
            let diff = col + k - r;
            let sign = if diff % 2 == 0 { 1.0 } else { -1.0 };
            let denom = factorial(two_j - col - k) * factorial(k) * factorial(diff) * factorial(r - k);
            acc += sign * c.powi((two_j + r - col - 2 * k) as i32) * s.powi((col + 2 * k - r) as i32) / denom;
        }
        Complex64::new(pref * acc, 0.0)
    })
}

/// `D^j_{m'm}(α, β, γ) = e^{−i m' α} d^j_{m'm}(β) e^{−i m γ}`.
pub fn wigner_d(two_j: usize, alpha: f64, beta: f64, gamma: f64) -> ComplexMatrix {
    let small = wigner_small_d(two_j, beta);
    let m = |k: usize| (two_j as f64 - 2.0 * k as f64) / 2.0;
    ComplexMatrix::from_fn(two_j + 1, two_j + 1, |r, c| {
        small[(r, c)] * Complex64::from_polar(1.0, -(m(r) * alpha + m(c) * gamma))
    })
}

/// `d + 1` Haar-random rotations in the spin-j representation.
pub fn random_su2_family<R: Rng + ?Sized>(two_j: usize, rng: &mut R) -> SternGerlachConfig {
    let unitaries = (0..two_j + 2)
        .map(|_| {
            let alpha = rng.gen_range(0.0..2.0 * PI);
            let beta = rng.gen_range(-1.0f64..=1.0).acos();
            let gamma = rng.gen_range(0.0..4.0 * PI);
            wigner_d(two_j, alpha, beta, gamma)
        })
        .collect();
    SternGerlachConfig::new(unitaries).expect("Wigner matrices are unitary")
}

/// Result of a seeded random search for SU(2)-generated MUB families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Su2SearchReport {
    pub two_j: usize,
    pub trials: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub min_violation: f64,
    pub best_trial: u64,
    pub found: bool,
    pub summary: String,
}

/// Trial `t` draws its family from ChaCha20 seeded with `seed`, stream `t`.
pub fn su2_family_search(two_j: usize, trials: u64, seed: u64, tol: f64) -> Su2SearchReport {
    let (min_violation, best_trial) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let config = random_su2_family(two_j, &mut rng);
            (check_mub_condition(&stern_gerlach_bases(&config), tol).max_violation, t)
        })
        .reduce(|| (f64::INFINITY, u64::MAX), |p, q| if q.0 < p.0 || (q.0 == p.0 && q.1 < p.1) { q } else { p });
    let found = min_violation <= tol;
    let summary = if found {
        format!("SU(2) family found at trial {best_trial} (violation {min_violation:e})")
    } else {
        format!("no SU(2) family found in {trials} trials (smallest violation {min_violation:.6})")
    };
    Su2SearchReport { two_j, trials, seed, tolerance: tol, min_violation, best_trial, found, summary }
}
