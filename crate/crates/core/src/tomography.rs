//! Scanning a state into its MUB tomogram and reconstructing it again.
//!
//! Three reconstruction routes are provided and cross-checked in tests:
//! the symmetric formula `ρ = Σ p_{bβ}(Π_{bβ} − I/(d+1))`, the closed-form
//! expansion coefficients `c_{bβ} = p_{bβ} − p_{b,d−1}`, and the explicit
//! block-diagonal linear system solved with its analytic inverse.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, ComplexMatrix, DensityMatrix, Tolerances, ONE};
use crate::mub::{grid_len, projectors, MubSet, ProjectorSet};

/// Probabilities `p_{aα}` on the `(d+1) × d` grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tomogram {
    dim: usize,
    probs: Vec<f64>,
}

/// How far a tomogram is from the normalization invariants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationDefect {
    /// `max_a |Σ_α p_{aα} − 1|`
    pub max_row_defect: f64,
    /// `|Σ p − (d+1)|`
    pub total_defect: f64,
    pub min_entry: f64,
    pub max_entry: f64,
}

impl NormalizationDefect {
    /// Largest violation of any tomogram invariant, including the [0, 1] range.
    pub fn worst(&self) -> f64 {
        let range = (-self.min_entry).max(self.max_entry - 1.0).max(0.0);
        self.max_row_defect.max(self.total_defect).max(range)
    }
}

impl Tomogram {
    /// Builds a tomogram from `[a][α]` rows; only the shape is checked.
    pub fn from_rows(dim: usize, rows: &[Vec<f64>]) -> Result<Self> {
        if dim == 0 || rows.len() != dim + 1 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::shape(format!("tomogram for dimension {dim} must be {} x {dim}", dim + 1)));
        }
        Self::from_flat(dim, rows.concat())
    }

    pub fn from_flat(dim: usize, probs: Vec<f64>) -> Result<Self> {
        if dim == 0 || probs.len() != grid_len(dim) {
            return Err(Error::shape(format!("tomogram for dimension {dim} needs {} entries", grid_len(dim))));
        }
        if probs.iter().any(|p| !p.is_finite()) {
            return Err(Error::validity("tomogram entries must be finite"));
        }
        Ok(Tomogram { dim, probs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, basis: usize, state: usize) -> f64 {
        self.probs[basis * self.dim + state]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.probs.chunks(self.dim).map(<[_]>::to_vec).collect()
    }

    pub fn normalization_defect(&self) -> NormalizationDefect {
        let max_row_defect = self.probs.chunks(self.dim).map(|r| (r.iter().sum::<f64>() - 1.0).abs()).fold(0.0, f64::max);
        let total_defect = (self.probs.iter().sum::<f64>() - (self.dim + 1) as f64).abs();
        NormalizationDefect {
            max_row_defect,
            total_defect,
            min_entry: self.probs.iter().copied().fold(f64::INFINITY, f64::min),
            max_entry: self.probs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        self.normalization_defect().worst() <= tol
    }

    /// `λ·self + (1−λ)·other`.
    pub fn mix(&self, other: &Tomogram, lambda: f64) -> Result<Tomogram> {
        if self.dim != other.dim {
            return Err(Error::shape("tomogram dimensions differ"));
        }
        let probs = self.probs.iter().zip(&other.probs).map(|(a, b)| lambda * a + (1.0 - lambda) * b).collect();
        Ok(Tomogram { dim: self.dim, probs })
    }

    pub fn max_abs_diff(&self, other: &Tomogram) -> f64 {
        self.probs.iter().zip(&other.probs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// `p_{aα} = ⟨aα|ρ|aα⟩`. The imaginary residue of each diagonal element must
/// stay within `tol.herm`; it is then discarded.
pub fn scan(state: &DensityMatrix, set: &MubSet, tol: &Tolerances) -> Result<Tomogram> {
    let d = set.dim();
    if state.dim() != d {
        return Err(Error::shape(format!("state dimension {} does not match MUB dimension {d}", state.dim())));
    }
    let rho = state.matrix();
    let mut probs = Vec::with_capacity(grid_len(d));
    for a in 0..=d {
        for alpha in 0..d {
            let v = set.vector(a, alpha);
            let rho_v: Vec<Complex64> = (0..d).map(|r| (0..d).map(|c| rho[(r, c)] * v[c]).sum()).collect();
            let p = inner(v, &rho_v);
            if p.im.abs() > tol.herm {
                return Err(Error::validity(format!(
                    "probability ({a}, {alpha}) has imaginary residue {:e}; input is not Hermitian",
                    p.im
                )));
            }
            probs.push(p.re);
        }
    }
    Ok(Tomogram { dim: d, probs })
}

/// Linear-inversion estimate plus diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub matrix: ComplexMatrix,
    pub normalization: NormalizationDefect,
    /// Set when the input violated normalization by more than `tol` (but at most `10·tol`).
    pub normalization_warning: bool,
    pub min_eigenvalue: f64,
    pub is_positive: bool,
}

impl Reconstruction {
    /// The estimate as a validated state, if it is one.
    pub fn density_matrix(&self, tol: &Tolerances) -> Result<DensityMatrix> {
        DensityMatrix::new(self.matrix.clone(), tol)
    }
}

/// Multiplier on the tomogram tolerance beyond which `reconstruct` rejects input.
pub const NOISY_TOMOGRAM_FACTOR: f64 = 10.0;

/// `ρ = Σ_{bβ} p_{bβ} (Π_{bβ} − I/(d+1))`.
///
/// Tomograms violating normalization by up to `10·tol.trace` are accepted
/// with `normalization_warning` set; larger violations are a validity error.
/// Positivity of the result is reported, never enforced.
pub fn reconstruct(tom: &Tomogram, set: &MubSet, tol: &Tolerances) -> Result<Reconstruction> {
    reconstruct_with(tom, &projectors(set), tol)
}

pub fn reconstruct_with(tom: &Tomogram, proj: &ProjectorSet, tol: &Tolerances) -> Result<Reconstruction> {
    let d = proj.dim();
    if tom.dim != d {
        return Err(Error::shape(format!("tomogram dimension {} does not match MUB dimension {d}", tom.dim)));
    }
    let normalization = tom.normalization_defect();
    let worst = normalization.worst();
    if worst > NOISY_TOMOGRAM_FACTOR * tol.trace {
        return Err(Error::validity(format!(
            "tomogram violates normalization by {worst:e}, more than {NOISY_TOMOGRAM_FACTOR}x tolerance {:e}",
            tol.trace
        )));
    }
    let matrix = reconstruct_unchecked(tom, proj);
    let min_eigenvalue = matrix.min_eigenvalue_with(f64::INFINITY)?;
    Ok(Reconstruction {
        matrix,
        normalization,
        normalization_warning: worst > tol.trace,
        min_eigenvalue,
        is_positive: min_eigenvalue >= -tol.psd,
    })
}

/// The reconstruction sum with no validation at all.
pub fn reconstruct_unchecked(tom: &Tomogram, proj: &ProjectorSet) -> ComplexMatrix {
    let d = proj.dim();
    let shift = 1.0 / (d + 1) as f64;
    let mut acc = ComplexMatrix::zeros(d, d);
    let mut total = 0.0;
    for (k, &p) in tom.probs.iter().enumerate() {
        acc.add_scaled_in_place(Complex64::new(p, 0.0), proj.flat(k));
        total += p;
    }
    acc.add_scaled_in_place(Complex64::new(-total * shift, 0.0), &ComplexMatrix::identity(d));
    acc
}

/// `c_I` and `c_{bβ}` (β ≤ d−2) in `ρ = c_I I + Σ c_{bβ} Π_{bβ}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCoefficients {
    dim: usize,
    c_identity: f64,
    /// `(d+1) × (d−1)` row-major.
    c: Vec<f64>,
}

impl ExpansionCoefficients {
    /// `c_identity` is derived from the trace condition.
    pub fn new(dim: usize, c: Vec<f64>) -> Result<Self> {
        if dim < 2 || c.len() != (dim + 1) * (dim - 1) {
            return Err(Error::shape(format!("expected {} coefficients", (dim + 1) * dim.saturating_sub(1))));
        }
        let c_identity = (1.0 - c.iter().sum::<f64>()) / dim as f64;
        Ok(ExpansionCoefficients { dim, c_identity, c })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn c_identity(&self) -> f64 {
        self.c_identity
    }

    pub fn get(&self, basis: usize, state: usize) -> f64 {
        self.c[basis * (self.dim - 1) + state]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c
    }

    pub fn max_abs_diff(&self, other: &ExpansionCoefficients) -> f64 {
        self.c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| (a - b).abs())
            .fold((self.c_identity - other.c_identity).abs(), f64::max)
    }
}

/// Closed form `c_{bβ} = p_{bβ} − p_{b,d−1}`.
pub fn coefficients_from_tomogram(tom: &Tomogram) -> ExpansionCoefficients {
    let d = tom.dim;
    let c = (0..=d)
        .flat_map(|b| (0..d - 1).map(move |beta| tom.get(b, beta) - tom.get(b, d - 1)))
        .collect();
    ExpansionCoefficients::new(d, c).expect("shape fixed by tomogram")
}

/// `ρ = I/d + Σ c_{bβ}(Π_{bβ} − I/d)`.
pub fn state_from_coefficients(coeffs: &ExpansionCoefficients, set: &MubSet) -> Result<ComplexMatrix> {
    state_from_coefficients_with(coeffs, &projectors(set))
}

pub fn state_from_coefficients_with(coeffs: &ExpansionCoefficients, proj: &ProjectorSet) -> Result<ComplexMatrix> {
    let d = proj.dim();
    if coeffs.dim != d {
        return Err(Error::shape(format!("coefficients for dimension {} used with MUB dimension {d}", coeffs.dim)));
    }
    let inv_d = 1.0 / d as f64;
    let id = ComplexMatrix::identity(d);
    let mut acc = id.scale_real(inv_d);
    for b in 0..=d {
        for beta in 0..d - 1 {
            let c = Complex64::new(coeffs.get(b, beta), 0.0);
            acc.add_scaled_in_place(c, proj.get(b, beta));
            acc.add_scaled_in_place(-c * inv_d, &id);
        }
    }
    Ok(acc)
}

/// The block-diagonal matrix `M` relating `p − 1/d` to `c`, and its inverse.
///
/// Rows and columns use the reduced index `b(d−1) + β`, `β ≤ d−2`.
#[derive(Debug, Clone, PartialEq)]
pub struct InversionMatrix {
    dim: usize,
    m: Vec<f64>,
    m_inv: Vec<f64>,
}

impl InversionMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Side length `d² − 1`.
    pub fn size(&self) -> usize {
        self.dim * self.dim - 1
    }

    pub fn entry(&self, r: usize, c: usize) -> f64 {
        self.m[r * self.size() + c]
    }

    pub fn inverse_entry(&self, r: usize, c: usize) -> f64 {
        self.m_inv[r * self.size() + c]
    }

    /// The repeated `(d−1) × (d−1)` diagonal block.
    pub fn block(&self) -> Vec<Vec<f64>> {
        let b = self.dim - 1;
        (0..b).map(|r| (0..b).map(|c| self.entry(r, c)).collect()).collect()
    }

    pub fn inverse_block(&self) -> Vec<Vec<f64>> {
        let b = self.dim - 1;
        (0..b).map(|r| (0..b).map(|c| self.inverse_entry(r, c)).collect()).collect()
    }

    /// `max |M·M⁻¹ − I|`.
    pub fn inverse_defect(&self) -> f64 {
        let n = self.size();
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in 0..n {
                let s: f64 = (0..n).map(|k| self.entry(r, k) * self.inverse_entry(k, c)).sum();
                worst = worst.max((s - if r == c { 1.0 } else { 0.0 }).abs());
            }
        }
        worst
    }
}

fn block_diagonal(d: usize, f: impl Fn(usize, usize) -> f64) -> Vec<f64> {
    let b = d - 1;
    let n = d * d - 1;
    let mut m = vec![0.0; n * n];
    for blk in 0..=d {
        for r in 0..b {
            for c in 0..b {
                m[(blk * b + r) * n + blk * b + c] = f(r, c);
            }
        }
    }
    m
}

/// Blocks `δ_{αβ} − 1/d` with analytic inverse blocks `1 + δ_{αβ}`.
pub fn inversion_matrix(d: usize) -> Result<InversionMatrix> {
    if d < 2 {
        return Err(Error::shape("inversion matrix needs d >= 2"));
    }
    let inv_d = 1.0 / d as f64;
    let delta = |r: usize, c: usize| if r == c { 1.0 } else { 0.0 };
    Ok(InversionMatrix {
        dim: d,
        m: block_diagonal(d, |r, c| delta(r, c) - inv_d),
        m_inv: block_diagonal(d, |r, c| 1.0 + delta(r, c)),
    })
}

/// `M_{aα,bβ} = Tr[Π_{aα}Π_{bβ}] − 1/d` evaluated numerically from a projector set.
pub fn inversion_matrix_from_projectors(proj: &ProjectorSet) -> Vec<f64> {
    let d = proj.dim();
    let n = d * d - 1;
    let reduced = |k: usize| (k / (d - 1), k % (d - 1));
    let mut m = vec![0.0; n * n];
    for r in 0..n {
        for c in 0..n {
            let (a, alpha) = reduced(r);
            let (b, beta) = reduced(c);
            m[r * n + c] = proj.get(a, alpha).trace_product_unchecked(proj.get(b, beta)).re - 1.0 / d as f64;
        }
    }
    m
}

/// Solves `p − 1/d = M c` by applying the analytic inverse.
pub fn solve_coefficients_linear(tom: &Tomogram) -> ExpansionCoefficients {
    let d = tom.dim;
    let inv = inversion_matrix(d).expect("tomogram dimension is positive");
    let n = inv.size();
    let rhs: Vec<f64> = (0..n).map(|r| tom.get(r / (d - 1), r % (d - 1)) - 1.0 / d as f64).collect();
    let c = (0..n).map(|r| (0..n).map(|k| inv.inverse_entry(r, k) * rhs[k]).sum()).collect();
    ExpansionCoefficients::new(d, c).expect("shape fixed by tomogram")
}

/// Convenience: the trace of a reconstructed matrix, for diagnostics.
pub fn trace_deviation(m: &ComplexMatrix) -> f64 {
    m.trace().map(|t| (t - ONE).norm()).unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mub::construct_mub;
    use crate::random::random_density_matrix;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn z_plus_tomogram() -> Tomogram {
        Tomogram::from_flat(2, vec![0.5, 0.5, 0.5, 0.5, 1.0, 0.0]).unwrap()
    }

    fn random_tomogram(d: usize, rng: &mut impl Rng) -> Tomogram {
        let mut probs = Vec::new();
        for _ in 0..=d {
            let w: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
            let s: f64 = w.iter().sum();
            probs.extend(w.iter().map(|x| x / s));
        }
        Tomogram::from_flat(d, probs).unwrap()
    }

    #[test]
    fn scan_maximally_mixed() {
        for d in [2, 3, 5] {
            let t = scan(&DensityMatrix::maximally_mixed(d), &construct_mub(d).unwrap(), &tol()).unwrap();
            assert!(t.as_slice().iter().all(|&p| (p - 1.0 / d as f64).abs() < 1e-15));
        }
    }

    #[test]
    fn scan_z_plus() {
        let rho = DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[1.0, 0.0]), &tol()).unwrap();
        let t = scan(&rho, &construct_mub(2).unwrap(), &tol()).unwrap();
        assert!(t.max_abs_diff(&z_plus_tomogram()) < 1e-15);
    }

    #[test]
    fn scan_rows_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let set = construct_mub(3).unwrap();
        let t = scan(&random_density_matrix(3, &mut rng), &set, &tol()).unwrap();
        let defect = t.normalization_defect();
        assert!(defect.max_row_defect < 1e-14 && defect.total_defect < 1e-13);
    }

    #[test]
    fn scan_dimension_mismatch() {
        let err = scan(&DensityMatrix::maximally_mixed(3), &construct_mub(2).unwrap(), &tol());
        assert!(matches!(err, Err(Error::Shape(_))));
    }

    #[test]
    fn reconstruct_uniform_and_z_plus() {
        for d in [2, 3, 5] {
            let t = Tomogram::from_flat(d, vec![1.0 / d as f64; grid_len(d)]).unwrap();
            let r = reconstruct(&t, &construct_mub(d).unwrap(), &tol()).unwrap();
            assert!(r.matrix.max_abs_diff(DensityMatrix::maximally_mixed(d).matrix()) < 1e-14);
        }
        let r = reconstruct(&z_plus_tomogram(), &construct_mub(2).unwrap(), &tol()).unwrap();
        assert!(r.matrix.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0, 0.0])) < 1e-15);
        assert!(r.is_positive && !r.normalization_warning);
    }

    #[test]
    fn reconstruct_noise_policy() {
        let set = construct_mub(2).unwrap();
        let mut probs = z_plus_tomogram().as_slice().to_vec();
        probs[0] += 5e-10;
        let warned = reconstruct(&Tomogram::from_flat(2, probs.clone()).unwrap(), &set, &tol()).unwrap();
        assert!(warned.normalization_warning);
        assert!(warned.matrix.hermiticity_defect() < 1e-12);
        probs[0] += 1e-8;
        let rejected = reconstruct(&Tomogram::from_flat(2, probs).unwrap(), &set, &tol());
        assert!(matches!(rejected, Err(Error::Validity(_))));
    }

    #[test]
    fn reconstruct_reports_non_positive_estimates() {
        // x+ and y+ both certain is not a state: Bloch vector (1, 1, 0).
        let t = Tomogram::from_flat(2, vec![1.0, 0.0, 1.0, 0.0, 0.5, 0.5]).unwrap();
        let r = reconstruct(&t, &construct_mub(2).unwrap(), &tol()).unwrap();
        assert!(!r.is_positive);
        assert_abs_diff_eq!(r.min_eigenvalue, 0.5 - 0.5 * 2f64.sqrt(), epsilon = 1e-14);
        assert!(r.density_matrix(&tol()).is_err());
    }

    #[test]
    fn coefficient_closed_form_examples() {
        let uniform = Tomogram::from_flat(3, vec![1.0 / 3.0; 12]).unwrap();
        let c = coefficients_from_tomogram(&uniform);
        assert!(c.as_slice().iter().all(|&x| x == 0.0));
        assert_abs_diff_eq!(c.c_identity(), 1.0 / 3.0, epsilon = 1e-15);

        let c = coefficients_from_tomogram(&z_plus_tomogram());
        assert_eq!(c.as_slice(), &[0.0, 0.0, 1.0]);
        assert_abs_diff_eq!(c.c_identity(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn state_from_coefficients_examples() {
        let set = construct_mub(2).unwrap();
        let zero = ExpansionCoefficients::new(2, vec![0.0; 3]).unwrap();
        assert!(state_from_coefficients(&zero, &set).unwrap().max_abs_diff(DensityMatrix::maximally_mixed(2).matrix()) < 1e-15);
        let z = ExpansionCoefficients::new(2, vec![0.0, 0.0, 1.0]).unwrap();
        let rho = state_from_coefficients(&z, &set).unwrap();
        assert!(rho.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0, 0.0])) < 1e-15);
        let wrong = ExpansionCoefficients::new(3, vec![0.0; 8]).unwrap();
        assert!(state_from_coefficients(&wrong, &set).is_err());
    }

    #[test]
    fn inversion_matrix_blocks() {
        let m2 = inversion_matrix(2).unwrap();
        assert_eq!(m2.size(), 3);
        assert_eq!(m2.block(), vec![vec![0.5]]);
        assert_eq!(m2.inverse_block(), vec![vec![2.0]]);

        let m3 = inversion_matrix(3).unwrap();
        let b = m3.block();
        assert_abs_diff_eq!(b[0][0], 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b[0][1], -1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b[1][0], -1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b[1][1], 2.0 / 3.0, epsilon = 1e-15);
        assert_eq!(m3.inverse_block(), vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        // off-diagonal blocks vanish
        assert_eq!(m3.entry(0, 2), 0.0);

        for d in [2, 3, 5, 7, 11, 13] {
            assert!(inversion_matrix(d).unwrap().inverse_defect() < 1e-12, "d={d}");
        }
    }

    #[test]
    fn inversion_matrix_matches_projector_traces() {
        for d in [2, 3, 5] {
            let numeric = inversion_matrix_from_projectors(&projectors(&construct_mub(d).unwrap()));
            let analytic = inversion_matrix(d).unwrap();
            let worst = numeric.iter().zip(&analytic.m).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(worst < 1e-12, "d={d}: {worst}");
        }
    }

    #[test]
    fn linear_solve_examples() {
        let uniform = Tomogram::from_flat(5, vec![0.2; 30]).unwrap();
        assert!(solve_coefficients_linear(&uniform).as_slice().iter().all(|x| x.abs() < 1e-15));
        let x_plus = Tomogram::from_flat(2, vec![1.0, 0.0, 0.5, 0.5, 0.5, 0.5]).unwrap();
        let c = solve_coefficients_linear(&x_plus);
        for (got, want) in c.as_slice().iter().zip([1.0, 0.0, 0.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn linear_solve_agrees_with_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut worst: f64 = 0.0;
        for d in [2, 3, 5] {
            for _ in 0..100 {
                let t = random_tomogram(d, &mut rng);
                worst = worst.max(solve_coefficients_linear(&t).max_abs_diff(&coefficients_from_tomogram(&t)));
            }
        }
        assert!(worst <= 1e-12, "{worst}");
    }

    #[test]
    fn route_equivalence_on_random_tomograms() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for d in [2, 3, 5] {
            let set = construct_mub(d).unwrap();
            for _ in 0..20 {
                let t = random_tomogram(d, &mut rng);
                let direct = reconstruct(&t, &set, &tol()).unwrap().matrix;
                let closed = state_from_coefficients(&coefficients_from_tomogram(&t), &set).unwrap();
                let linear = state_from_coefficients(&solve_coefficients_linear(&t), &set).unwrap();
                assert!(direct.max_abs_diff(&closed) < 1e-10);
                assert!(direct.max_abs_diff(&linear) < 1e-10);
            }
        }
    }

    #[test]
    fn shape_errors() {
        assert!(Tomogram::from_flat(2, vec![0.5; 5]).is_err());
        assert!(Tomogram::from_rows(2, &[vec![0.5, 0.5], vec![0.5, 0.5]]).is_err());
        assert!(Tomogram::from_flat(2, vec![f64::NAN; 6]).is_err());
        let t3 = Tomogram::from_flat(3, vec![1.0 / 3.0; 12]).unwrap();
        assert!(matches!(reconstruct(&t3, &construct_mub(2).unwrap(), &tol()), Err(Error::Shape(_))));
    }
}
