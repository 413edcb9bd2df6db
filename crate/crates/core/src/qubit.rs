//! Qubit closed forms and the SIC-POVM star-product scheme.
//!
//! MUB indices are 0-based `(a, α)` with `a = 0, 1, 2 ↔ x, y, z` and
//! `α = 0 ↔ +`. SIC indices are 1-based, `k = 1..4`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{pauli_x, pauli_y, pauli_z, ComplexMatrix};
use crate::mub::{CompositeIndex, ProjectorSet};
use crate::report::{CheckReport, SweepPlan, ViolationTracker};
use crate::starprod::{delta_function, intertwining_kernel, scheme, symbol, triple_products_from, MubSymbol, StarScheme, SymbolKind};

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn pauli(axis: usize) -> ComplexMatrix {
    match axis {
        0 => pauli_x(),
        1 => pauli_y(),
        _ => pauli_z(),
    }
}

/// `½(I + n·σ)`.
pub fn bloch_projector(n: [f64; 3]) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(2);
    for (axis, &c) in n.iter().enumerate() {
        m.add_scaled_in_place(Complex64::new(c, 0.0), &pauli(axis));
    }
    m.scale_real(0.5)
}

/// The six projectors `½(I ± σ_w)`, `w = x, y, z`.
pub fn qubit_mub_projectors() -> ProjectorSet {
    let mut out = Vec::with_capacity(6);
    for axis in 0..3 {
        for sign in [1.0, -1.0] {
            let mut n = [0.0; 3];
            n[axis] = sign;
            out.push(bloch_projector(n));
        }
    }
    ProjectorSet::from_matrices(2, out).expect("six 2x2 projectors")
}

fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

fn state_sign(alpha: usize) -> f64 {
    if alpha == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_qubit_index(x: CompositeIndex) -> Result<()> {
    if x.basis > 2 || x.state > 1 {
        return Err(Error::shape(format!("qubit index ({}, {}) out of range", x.basis, x.state)));
    }
    Ok(())
}

/// `¼[1 + 2(δδ + δδ + δδ) − (δ_{ab} + δ_{bc} + δ_{ca}) + i ε_{abc} s_α s_β s_γ]`.
pub fn qubit_triple_product_closed_form(x1: CompositeIndex, x2: CompositeIndex, x3: CompositeIndex) -> Result<Complex64> {
    for x in [x1, x2, x3] {
        check_qubit_index(x)?;
    }
    let d = |p: usize, q: usize| if p == q { 1.0 } else { 0.0 };
    let same = |p: CompositeIndex, q: CompositeIndex| d(p.basis, q.basis) * d(p.state, q.state);
    let re = 1.0 + 2.0 * (same(x1, x2) + same(x2, x3) + same(x3, x1))
        - (d(x1.basis, x2.basis) + d(x2.basis, x3.basis) + d(x3.basis, x1.basis));
    let im = levi_civita(x1.basis, x2.basis, x3.basis) * state_sign(x1.state) * state_sign(x2.state) * state_sign(x3.state);
    Ok(Complex64::new(re, im) * 0.25)
}

/// `1/6 + δ_{ab}(δ_{αβ} − ½)`.
pub fn qubit_delta_closed_form(x1: CompositeIndex, x2: CompositeIndex) -> f64 {
    let same_basis = x1.basis == x2.basis;
    1.0 / 6.0 + if same_basis { if x1.state == x2.state { 0.5 } else { -0.5 } } else { 0.0 }
}

/// Sign function `S(k; a, α)`, rows `k = 1..4`, columns `00 01 10 11 20 21`.
pub const SIGN_TABLE: [[i8; 6]; 4] = [
    [1, -1, 1, -1, 1, -1],
    [1, -1, -1, 1, -1, 1],
    [-1, 1, 1, -1, -1, 1],
    [-1, 1, -1, 1, 1, -1],
];

/// Sign pattern of the tetrahedral directions `√3 n_k`.
const DIRECTION_SIGNS: [[f64; 3]; 4] = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];

pub fn sign_function(k: usize, a: usize, alpha: usize) -> Result<i8> {
    if !(1..=4).contains(&k) {
        return Err(Error::shape(format!("SIC index {k} out of range 1..=4")));
    }
    check_qubit_index(CompositeIndex::new(a, alpha))?;
    Ok(SIGN_TABLE[k - 1][2 * a + alpha])
}

/// `½(1 + √3 S(k; aα))`
pub fn sic_to_mub_kernel_closed_form(k: usize, x: CompositeIndex) -> Result<f64> {
    Ok(0.5 * (1.0 + SQRT3 * f64::from(sign_function(k, x.basis, x.state)?)))
}

/// `(1/12)(1 + √3 S(k; aα))`
pub fn mub_to_sic_kernel_closed_form(x: CompositeIndex, k: usize) -> Result<f64> {
    Ok((1.0 + SQRT3 * f64::from(sign_function(k, x.basis, x.state)?)) / 12.0)
}

/// The qubit SIC-POVM scheme: `𝒫_k = ½(I + σ·n_k)`, `𝓤_k = 𝒫_k/2`, `𝓓_k = 3𝒫_k − I`.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitSic {
    directions: [[f64; 3]; 4],
    projectors: Vec<ComplexMatrix>,
    dequantizers: Vec<ComplexMatrix>,
    quantizers: Vec<ComplexMatrix>,
}

impl QubitSic {
    pub fn directions(&self) -> &[[f64; 3]; 4] {
        &self.directions
    }

    /// `𝒫_k` for `k = 1..4`.
    pub fn projector(&self, k: usize) -> &ComplexMatrix {
        &self.projectors[k - 1]
    }

    /// `f_SIC(k) = Tr[A 𝓤_k]`, in order `k = 1..4`.
    pub fn symbol(&self, op: &ComplexMatrix) -> Result<[Complex64; 4]> {
        let v = self.symbol_values(op)?;
        Ok([v[0], v[1], v[2], v[3]])
    }

    /// `A = Σ_k f_SIC(k) 𝓓_k`.
    pub fn operator(&self, symbol: &[Complex64; 4]) -> ComplexMatrix {
        self.operator_from_values(symbol).expect("four values")
    }
}

impl StarScheme for QubitSic {
    fn dim(&self) -> usize {
        2
    }

    fn dequantizers(&self) -> &[ComplexMatrix] {
        &self.dequantizers
    }

    fn quantizers(&self) -> &[ComplexMatrix] {
        &self.quantizers
    }
}

pub fn sic_scheme() -> QubitSic {
    let directions = DIRECTION_SIGNS.map(|s| s.map(|c| c / SQRT3));
    // Table transcription guard: S(k; aα) = sign(n_k along a) · s_α.
    for (k, signs) in DIRECTION_SIGNS.iter().enumerate() {
        for a in 0..3 {
            for alpha in 0..2 {
                let geometric = signs[a] * state_sign(alpha);
                assert_eq!(geometric, f64::from(SIGN_TABLE[k][2 * a + alpha]), "sign table entry k={} a={a} α={alpha}", k + 1);
            }
        }
    }
    let projectors: Vec<ComplexMatrix> = directions.iter().map(|&n| bloch_projector(n)).collect();
    let id = ComplexMatrix::identity(2);
    QubitSic {
        directions,
        dequantizers: projectors.iter().map(|p| p.scale_real(0.5)).collect(),
        quantizers: projectors.iter().map(|p| p.scale_real(3.0).sub(&id).expect("2x2")).collect(),
        projectors,
    }
}

/// `f_MUB(a, α) = Σ_k f_SIC(k) · ½(1 + √3 S(k; aα))`.
pub fn intertwine_sic_to_mub(sic_symbol: &[Complex64]) -> Result<MubSymbol> {
    if sic_symbol.len() != 4 {
        return Err(Error::shape(format!("SIC symbol must have 4 values, got {}", sic_symbol.len())));
    }
    let mut values = Vec::with_capacity(6);
    for x in 0..6 {
        let idx = CompositeIndex::from_flat(x, 2);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, f) in sic_symbol.iter().enumerate() {
            acc += f * sic_to_mub_kernel_closed_form(k + 1, idx)?;
        }
        values.push(acc);
    }
    MubSymbol::new(2, SymbolKind::Ordinary, values)
}

/// `f_SIC(k) = Σ_{aα} f_MUB(a, α) · (1/12)(1 + √3 S(k; aα))`.
pub fn intertwine_mub_to_sic(mub_symbol: &MubSymbol) -> Result<[Complex64; 4]> {
    if mub_symbol.dim() != 2 {
        return Err(Error::shape(format!("SIC intertwining needs a qubit symbol, got dimension {}", mub_symbol.dim())));
    }
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (k, slot) in out.iter_mut().enumerate() {
        for (x, f) in mub_symbol.values().iter().enumerate() {
            *slot += f * mub_to_sic_kernel_closed_form(CompositeIndex::from_flat(x, 2), k + 1)?;
        }
    }
    Ok(out)
}

/// Closed forms against the generic trace constructions, exhaustively.
/// Kernel and roundtrip reports locate violations by MUB index only.
pub fn qubit_checks() -> Result<Vec<CheckReport>> {
    let proj = qubit_mub_projectors();
    let mub = scheme(&crate::mub::construct_mub(2)?);
    let sic = sic_scheme();
    let plan = SweepPlan::Exhaustive;

    let t = triple_products_from(&proj);
    let mut tp = ViolationTracker::new(2);
    let count = plan.for_each_tuple(6, 3, |x| {
        let closed = qubit_triple_product_closed_form(
            CompositeIndex::from_flat(x[0], 2),
            CompositeIndex::from_flat(x[1], 2),
            CompositeIndex::from_flat(x[2], 2),
        )
        .expect("in range");
        tp.record((closed - t.at(x[0], x[1], x[2])).norm(), x);
    });
    let mut out = vec![tp.finish("qubit_triple_product_closed_form", 1e-15, count, plan)];

    let delta = delta_function(&mub)?;
    let mut dl = ViolationTracker::new(2);
    let count = plan.for_each_tuple(6, 2, |x| {
        let (p, q) = (CompositeIndex::from_flat(x[0], 2), CompositeIndex::from_flat(x[1], 2));
        dl.record((delta.get(p, q) - qubit_delta_closed_form(p, q)).abs(), x);
    });
    out.push(dl.finish("qubit_delta_function_closed_form", 1e-15, count, plan));

    let to_mub = intertwining_kernel(&sic, &mub)?;
    let to_sic = intertwining_kernel(&mub, &sic)?;
    let mut ks = ViolationTracker::new(2);
    let mut km = ViolationTracker::new(2);
    for k in 1..=4 {
        for x in 0..6 {
            let idx = CompositeIndex::from_flat(x, 2);
            ks.record((to_mub.get(k - 1, x) - sic_to_mub_kernel_closed_form(k, idx)?).norm(), &[x]);
            km.record((to_sic.get(x, k - 1) - mub_to_sic_kernel_closed_form(idx, k)?).norm(), &[x]);
        }
    }
    out.push(ks.finish("sic_to_mub_kernel_closed_form", 1e-12, 24, plan));
    out.push(km.finish("mub_to_sic_kernel_closed_form", 1e-12, 24, plan));

    // Table entries against tetrahedron geometry: sign(√3 n_k[a]) · s_α.
    let mut st = ViolationTracker::new(2);
    for (k, row) in SIGN_TABLE.iter().enumerate() {
        for (x, &entry) in row.iter().enumerate() {
            let geometric = (sic.directions()[k][x / 2] * SQRT3).round() * state_sign(x % 2);
            st.record((geometric - f64::from(entry)).abs(), &[x]);
        }
    }
    out.push(st.finish("sign_table_geometry", 0.0, 24, plan));

    // Spanning set: I, σ_x, σ_y, σ_z, and the four SIC projectors.
    let mut ops = vec![ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()];
    ops.extend((1..=4).map(|k| sic.projector(k).clone()));
    let mut rt = ViolationTracker::new(2);
    for op in &ops {
        let fm = symbol(op, &mub)?;
        let fs = sic.symbol(op)?;
        let fs_via = intertwine_mub_to_sic(&fm)?;
        let fm_via = intertwine_sic_to_mub(&fs)?;
        let sic_err = fs.iter().zip(&fs_via).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
        let back = intertwine_sic_to_mub(&fs_via)?;
        rt.record(sic_err.max(fm_via.max_abs_diff(&fm)).max(back.max_abs_diff(&fm)), &[]);
    }
    out.push(rt.finish("sic_mub_intertwining_roundtrip", 1e-12, ops.len() as u64, plan));
    Ok(out)
}
