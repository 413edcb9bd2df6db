//! Full families of mutually unbiased bases, their projectors and the MUB-POVM.
//!
//! Supported dimensions are 2 and the odd primes. For odd prime `d` the bases
//! `a = 0..d-1` have amplitudes `⟨k|aα⟩ = d^{-1/2} ω^{a k² + α k}` with
//! `ω = exp(2πi/d)`, and basis `a = d` is the computational basis. For `d = 2`
//! the bases are the σx, σy, σz eigenbases in that order, `+` before `−`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, outer_raw, ComplexMatrix, ONE, ZERO};

/// A (basis, state) pair `(a, α)`; flattened as `k = a·d + α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompositeIndex {
    pub basis: usize,
    pub state: usize,
}

impl CompositeIndex {
    pub const fn new(basis: usize, state: usize) -> Self {
        CompositeIndex { basis, state }
    }

    pub fn flat(self, dim: usize) -> usize {
        self.basis * dim + self.state
    }

    pub fn from_flat(k: usize, dim: usize) -> Self {
        CompositeIndex { basis: k / dim, state: k % dim }
    }

    pub fn checked_flat(self, dim: usize) -> Result<usize> {
        if self.basis > dim || self.state >= dim {
            return Err(Error::shape(format!(
                "index ({}, {}) out of range for dimension {dim}",
                self.basis, self.state
            )));
        }
        Ok(self.flat(dim))
    }
}

/// Number of composite indices, `d(d+1)`.
pub fn grid_len(dim: usize) -> usize {
    dim * (dim + 1)
}

/// `Tr[Π_{aα} Π_{bβ}]` for an ideal MUB family: `(1/d)(1−δ_{ab}) + δ_{ab}δ_{αβ}`.
pub fn overlap(dim: usize, x: CompositeIndex, y: CompositeIndex) -> f64 {
    if x.basis == y.basis {
        if x.state == y.state {
            1.0
        } else {
            0.0
        }
    } else {
        1.0 / dim as f64
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
}

fn prime_power_base(n: usize) -> Option<usize> {
    let p = (2..=n).find(|p| n.is_multiple_of(*p))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

pub fn is_supported_dimension(d: usize) -> bool {
    d == 2 || (d % 2 == 1 && is_prime(d))
}

fn check_supported(d: usize) -> Result<()> {
    if is_supported_dimension(d) {
        return Ok(());
    }
    let reason = match d {
        0 | 1 => "dimension must be 2 or an odd prime".to_string(),
        _ => match prime_power_base(d) {
            Some(p) => format!(
                "dimension must be 2 or an odd prime; {d} = {p}^n is a prime power, \
                 which needs a finite-field construction that is not implemented"
            ),
            None => format!("dimension must be 2 or an odd prime; {d} is composite"),
        },
    };
    Err(Error::UnsupportedDimension { dim: d, reason })
}

/// The `d+1` bases of a MUB family, stored as raw amplitude vectors.
///
/// Construction through [`MubSet::from_bases`] checks shape only, so an
/// invalid family can be represented and then diagnosed with [`validate_mub`].
#[derive(Debug, Clone, PartialEq)]
pub struct MubSet {
    dim: usize,
    /// Indexed by flat composite index.
    vectors: Vec<Vec<Complex64>>,
}

impl MubSet {
    pub fn from_bases(dim: usize, bases: Vec<Vec<Vec<Complex64>>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::shape("dimension must be positive"));
        }
        if bases.len() != dim + 1 {
            return Err(Error::shape(format!("expected {} bases, got {}", dim + 1, bases.len())));
        }
        let mut vectors = Vec::with_capacity(grid_len(dim));
        for (a, basis) in bases.into_iter().enumerate() {
            if basis.len() != dim {
                return Err(Error::shape(format!("basis {a} has {} vectors, expected {dim}", basis.len())));
            }
            for (alpha, v) in basis.into_iter().enumerate() {
                if v.len() != dim {
                    return Err(Error::shape(format!("vector ({a}, {alpha}) has length {}, expected {dim}", v.len())));
                }
                vectors.push(v);
            }
        }
        Ok(MubSet { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&self, basis: usize, state: usize) -> &[Complex64] {
        &self.vectors[basis * self.dim + state]
    }

    pub(crate) fn vector_flat(&self, k: usize) -> &[Complex64] {
        &self.vectors[k]
    }

    /// Nested `[a][α][k]` amplitudes.
    pub fn bases(&self) -> Vec<Vec<Vec<Complex64>>> {
        self.vectors.chunks(self.dim).map(<[_]>::to_vec).collect()
    }
}

/// Multiplies `v` by a phase so its first nonzero amplitude is real positive.
fn canonical_phase(mut v: Vec<Complex64>) -> Vec<Complex64> {
    if let Some(first) = v.iter().copied().find(|z| z.norm() > 1e-12) {
        let phase = first.conj() / first.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
        // Exact zero imaginary part on the pivot.
        if let Some(z) = v.iter_mut().find(|z| z.norm() > 1e-12) {
            *z = Complex64::new(z.norm(), 0.0);
        }
    }
    v
}

/// Builds the full MUB family for `d = 2` or odd prime `d`.
pub fn construct_mub(d: usize) -> Result<MubSet> {
    check_supported(d)?;
    let mut bases: Vec<Vec<Vec<Complex64>>> = Vec::with_capacity(d + 1);
    if d == 2 {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let ih = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
        bases.push(vec![vec![h, h], vec![h, -h]]);
        bases.push(vec![vec![h, ih], vec![h, -ih]]);
    } else {
        let amp = 1.0 / (d as f64).sqrt();
        for a in 0..d {
            let basis = (0..d)
                .map(|alpha| {
                    (0..d)
                        .map(|k| {
                            let e = (a * k * k + alpha * k) % d;
                            Complex64::from_polar(amp, 2.0 * PI * e as f64 / d as f64)
                        })
                        .collect()
                })
                .collect();
            bases.push(basis);
        }
    }
    let computational = (0..d)
        .map(|alpha| (0..d).map(|k| if k == alpha { ONE } else { ZERO }).collect())
        .collect();
    bases.push(computational);
    let bases = bases.into_iter().map(|b: Vec<Vec<Complex64>>| b.into_iter().map(canonical_phase).collect()).collect();
    MubSet::from_bases(d, bases)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantCheck {
    pub max_deviation: f64,
    /// The pair of composite indices attaining `max_deviation`.
    pub worst_pair: Option<(CompositeIndex, CompositeIndex)>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MubValidation {
    pub dim: usize,
    pub tolerance: f64,
    pub basis_count_ok: bool,
    pub orthonormality: InvariantCheck,
    pub unbiasedness: InvariantCheck,
    pub passed: bool,
}

/// Exhaustively checks orthonormality within bases and unbiasedness across
/// bases over every ordered pair of vectors.
pub fn validate_mub(set: &MubSet, tol: f64) -> MubValidation {
    let d = set.dim;
    let n = set.vectors.len();
    let mut ortho = (0.0f64, None);
    let mut unbiased = (0.0f64, None);
    for x in 0..n {
        for y in 0..n {
            let (cx, cy) = (CompositeIndex::from_flat(x, d), CompositeIndex::from_flat(y, d));
            let ov = inner(set.vector_flat(x), set.vector_flat(y));
            if cx.basis == cy.basis {
                let target = if cx.state == cy.state { ONE } else { ZERO };
                let dev = (ov - target).norm();
                if dev > ortho.0 || (dev.is_nan() && !ortho.0.is_nan()) {
                    ortho = (dev, Some((cx, cy)));
                }
            } else {
                let dev = (ov.norm_sqr() - 1.0 / d as f64).abs();
                if dev > unbiased.0 || (dev.is_nan() && !unbiased.0.is_nan()) {
                    unbiased = (dev, Some((cx, cy)));
                }
            }
        }
    }
    let orthonormality = InvariantCheck { max_deviation: ortho.0, worst_pair: ortho.1, passed: ortho.0 <= tol };
    let unbiasedness = InvariantCheck { max_deviation: unbiased.0, worst_pair: unbiased.1, passed: unbiased.0 <= tol };
    let basis_count_ok = n == grid_len(d);
    MubValidation {
        dim: d,
        tolerance: tol,
        basis_count_ok,
        passed: basis_count_ok && orthonormality.passed && unbiasedness.passed,
        orthonormality,
        unbiasedness,
    }
}

/// The rank-1 projectors `Π_{aα} = |aα⟩⟨aα|`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorSet {
    dim: usize,
    projectors: Vec<ComplexMatrix>,
}

impl ProjectorSet {
    /// Wraps `d(d+1)` matrices in flat composite order.
    pub fn from_matrices(dim: usize, projectors: Vec<ComplexMatrix>) -> Result<Self> {
        if projectors.len() != grid_len(dim) {
            return Err(Error::shape(format!("expected {} projectors, got {}", grid_len(dim), projectors.len())));
        }
        if projectors.iter().any(|p| p.rows() != dim || p.cols() != dim) {
            return Err(Error::shape(format!("projectors must be {dim}x{dim}")));
        }
        Ok(ProjectorSet { dim, projectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, basis: usize, state: usize) -> &ComplexMatrix {
        &self.projectors[basis * self.dim + state]
    }

    pub fn flat(&self, k: usize) -> &ComplexMatrix {
        &self.projectors[k]
    }

    pub fn as_slice(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    /// `Σ_α Π_{aα}` for one basis.
    pub fn basis_sum(&self, basis: usize) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for alpha in 0..self.dim {
            acc.add_scaled_in_place(ONE, self.get(basis, alpha));
        }
        acc
    }

    pub fn total_sum(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for p in &self.projectors {
            acc.add_scaled_in_place(ONE, p);
        }
        acc
    }

    /// `max |Tr[Π_x Π_y] − overlap(x, y)|` over all pairs.
    pub fn trace_relation_defect(&self) -> f64 {
        let n = self.projectors.len();
        let mut worst: f64 = 0.0;
        for x in 0..n {
            for y in 0..n {
                let tr = self.projectors[x].trace_product_unchecked(&self.projectors[y]);
                let target = overlap(self.dim, CompositeIndex::from_flat(x, self.dim), CompositeIndex::from_flat(y, self.dim));
                worst = worst.max((tr - target).norm());
            }
        }
        worst
    }
}

pub fn projectors(set: &MubSet) -> ProjectorSet {
    ProjectorSet { dim: set.dim, projectors: set.vectors.iter().map(|v| outer_raw(v)).collect() }
}

/// Effects `E_{aα} = Π_{aα}/(d+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MubPovm {
    dim: usize,
    effects: Vec<ComplexMatrix>,
}

impl MubPovm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, basis: usize, state: usize) -> &ComplexMatrix {
        &self.effects[basis * self.dim + state]
    }

    pub fn effects(&self) -> &[ComplexMatrix] {
        &self.effects
    }

    pub fn sum(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.effects {
            acc.add_scaled_in_place(ONE, e);
        }
        acc
    }
}

pub fn povm(set: &MubSet) -> MubPovm {
    let w = 1.0 / (set.dim + 1) as f64;
    MubPovm { dim: set.dim, effects: projectors(set).projectors.iter().map(|p| p.scale_real(w)).collect() }
}
