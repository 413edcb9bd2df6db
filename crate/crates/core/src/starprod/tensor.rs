//! Rank-3 tensors over composite indices: triple products and kernels.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::mub::{grid_len, overlap, projectors, CompositeIndex, MubSet, ProjectorSet};

use super::{MubSymbol, SchemePair, StarScheme, SymbolKind};

/// Maximum tolerated disagreement between the formula and trace routes.
pub const KERNEL_CROSS_CHECK_TOL: f64 = 1e-10;

/// Dense `n × n × n` complex tensor, `n = d(d+1)`, indexed by flat composite indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank3 {
    dim: usize,
    n: usize,
    data: Vec<Complex64>,
}

impl Rank3 {
    fn build(dim: usize, f: impl Fn(usize, usize, usize) -> Complex64 + Sync) -> Self {
        let n = grid_len(dim);
        let mut data = vec![Complex64::new(0.0, 0.0); n * n * n];
        data.par_chunks_mut(n * n).enumerate().for_each(|(x1, slab)| {
            for x2 in 0..n {
                for x3 in 0..n {
                    slab[x2 * n + x3] = f(x1, x2, x3);
                }
            }
        });
        Rank3 { dim, n, data }
    }

    /// Fills slab `x1` row by row; `f(x1, x2, row)` writes all `x3` for one `(x1, x2)`.
    fn build_rows(dim: usize, f: impl Fn(usize, usize, &mut [Complex64]) + Sync) -> Self {
        let n = grid_len(dim);
        let mut data = vec![Complex64::new(0.0, 0.0); n * n * n];
        data.par_chunks_mut(n * n).enumerate().for_each(|(x1, slab)| {
            for (x2, row) in slab.chunks_mut(n).enumerate() {
                f(x1, x2, row);
            }
        });
        Rank3 { dim, n, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of composite indices per axis.
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, x1: usize, x2: usize, x3: usize) -> Complex64 {
        self.data[(x1 * self.n + x2) * self.n + x3]
    }

    pub fn get(&self, x1: CompositeIndex, x2: CompositeIndex, x3: CompositeIndex) -> Complex64 {
        self.at(x1.flat(self.dim), x2.flat(self.dim), x3.flat(self.dim))
    }

    pub fn max_abs_diff(&self, other: &Rank3) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub(crate) fn perturb_at(&mut self, x1: usize, x2: usize, x3: usize, delta: Complex64) {
        let n = self.n;
        self.data[(x1 * n + x2) * n + x3] += delta;
    }
}

/// `T_{x₁x₂x₃} = Tr[Π_{x₁} Π_{x₂} Π_{x₃}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleProductTensor(pub Rank3);

impl std::ops::Deref for TripleProductTensor {
    type Target = Rank3;

    fn deref(&self) -> &Rank3 {
        &self.0
    }
}

/// Direct traces of all three-fold projector products.
pub fn triple_products(set: &MubSet) -> TripleProductTensor {
    triple_products_from(&projectors(set))
}

pub fn triple_products_from(proj: &ProjectorSet) -> TripleProductTensor {
    let p = proj.as_slice();
    TripleProductTensor(Rank3::build_rows(proj.dim(), |x1, x2, row| {
        let pair = p[x1].product(&p[x2]);
        for (x3, slot) in row.iter_mut().enumerate() {
            *slot = pair.trace_product_unchecked(&p[x3]);
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    /// `K = Tr[D̂ D̂ Û]`
    Ordinary,
    /// `K^d = Tr[Û Û D̂]`
    Dual,
}

impl KernelKind {
    pub fn symbol_kind(self) -> SymbolKind {
        match self {
            KernelKind::Ordinary => SymbolKind::Ordinary,
            KernelKind::Dual => SymbolKind::Dual,
        }
    }
}

/// A star-product kernel, with the agreement between its two computation routes.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelTensor {
    kind: KernelKind,
    tensor: Rank3,
    cross_check: f64,
}

impl std::ops::Deref for KernelTensor {
    type Target = Rank3;

    fn deref(&self) -> &Rank3 {
        &self.tensor
    }
}

impl KernelTensor {
    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    /// Max entrywise difference between the formula and trace routes.
    pub fn cross_check(&self) -> f64 {
        self.cross_check
    }

    /// Adds `delta` to one entry. Used to exercise the identity detectors.
    pub fn perturb(&mut self, x1: usize, x2: usize, x3: usize, delta: Complex64) {
        self.tensor.perturb_at(x1, x2, x3, delta);
    }
}

/// Kernel entries from the closed formulas in terms of the triple product.
pub fn kernel_from_triple_products(t: &TripleProductTensor, kind: KernelKind) -> Rank3 {
    let d = t.dim();
    let df = d as f64;
    let dp1 = df + 1.0;
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    Rank3::build(d, |x1, x2, x3| {
        let (a, b, c) = (CompositeIndex::from_flat(x1, d), CompositeIndex::from_flat(x2, d), CompositeIndex::from_flat(x3, d));
        let tv = t.at(x1, x2, x3);
        let correction = match kind {
            KernelKind::Ordinary => {
                (delta(a.basis, c.basis) + delta(b.basis, c.basis)) / (df * dp1)
                    - (delta(a.basis, c.basis) * delta(a.state, c.state) + delta(b.basis, c.basis) * delta(b.state, c.state)) / dp1
                    - (df + 2.0) / (df * dp1 * dp1)
            }
            KernelKind::Dual => -overlap(d, a, b) / dp1,
        };
        tv + correction
    })
}

/// Kernel entries by direct traces of quantizer/dequantizer products.
pub fn kernel_by_trace(scheme: &SchemePair, kind: KernelKind) -> Rank3 {
    let (first, last) = match kind {
        KernelKind::Ordinary => (scheme.quantizers(), scheme.dequantizers()),
        KernelKind::Dual => (scheme.dequantizers(), scheme.quantizers()),
    };
    Rank3::build_rows(scheme.dim(), |x1, x2, row| {
        let pair = first[x1].product(&first[x2]);
        for (x3, slot) in row.iter_mut().enumerate() {
            *slot = pair.trace_product_unchecked(&last[x3]);
        }
    })
}

/// Builds a kernel by both routes; fails if they disagree beyond
/// [`KERNEL_CROSS_CHECK_TOL`]. The formula route is returned.
pub fn kernel(set: &MubSet, kind: KernelKind) -> Result<KernelTensor> {
    let proj = projectors(set);
    let t = triple_products_from(&proj);
    kernel_checked(&t, &SchemePair::from_projectors(&proj), kind)
}

pub(crate) fn kernel_checked(t: &TripleProductTensor, scheme: &SchemePair, kind: KernelKind) -> Result<KernelTensor> {
    let formula = kernel_from_triple_products(t, kind);
    let traced = kernel_by_trace(scheme, kind);
    let cross_check = formula.max_abs_diff(&traced);
    if cross_check.is_nan() || cross_check > KERNEL_CROSS_CHECK_TOL {
        return Err(Error::Consistency(format!(
            "{kind:?} kernel: formula and trace routes differ by {cross_check:e}"
        )));
    }
    Ok(KernelTensor { kind, tensor: formula, cross_check })
}

/// `(f ⋆ g)(x) = Σ_{x₁x₂} f(x₁) g(x₂) K(x₁, x₂, x)`.
pub fn star_multiply(fa: &MubSymbol, fb: &MubSymbol, k: &KernelTensor) -> Result<MubSymbol> {
    let d = k.dim();
    if fa.dim() != d || fb.dim() != d {
        return Err(Error::shape(format!("symbols of dimension {} and {} with kernel of dimension {d}", fa.dim(), fb.dim())));
    }
    let kind = k.kind.symbol_kind();
    if fa.kind() != kind || fb.kind() != kind {
        return Err(Error::shape(format!("{:?} kernel requires {kind:?} symbols", k.kind)));
    }
    let n = k.n();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (x1, &a) in fa.values().iter().enumerate() {
        for (x2, &b) in fb.values().iter().enumerate() {
            let w = a * b;
            let row = &k.tensor.data[(x1 * n + x2) * n..(x1 * n + x2 + 1) * n];
            for (o, &kv) in out.iter_mut().zip(row) {
                *o += w * kv;
            }
        }
    }
    MubSymbol::new(d, kind, out)
}

/// Trace of `A₁ A₂ ... Aₘ`.
pub(crate) fn trace_chain(ops: &[&ComplexMatrix]) -> Complex64 {
    match ops {
        [] => Complex64::new(0.0, 0.0),
        [a] => a.trace().expect("square"),
        [first, middle @ .., last] => {
            let mut acc = (*first).clone();
            for m in middle {
                acc = acc.product(m);
            }
            acc.trace_product_unchecked(last)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli_x, pauli_y, pauli_z, I};
    use crate::mub::construct_mub;
    use crate::random::random_operator;
    use crate::starprod::{dual_symbol, scheme, symbol};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonal_triple_products_are_one() {
        let t = triple_products(&construct_mub(3).unwrap());
        for x in 0..t.n() {
            assert!((t.at(x, x, x) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn qubit_triple_product_entry() {
        let t = triple_products(&construct_mub(2).unwrap());
        let x = CompositeIndex::new;
        let v = t.get(x(0, 0), x(1, 0), x(2, 0));
        assert!((v - Complex64::new(0.25, 0.25)).norm() < 1e-15);
    }

    #[test]
    fn kernel_routes_agree() {
        for d in [2, 3, 5] {
            for kind in [KernelKind::Ordinary, KernelKind::Dual] {
                let k = kernel(&construct_mub(d).unwrap(), kind).unwrap();
                assert!(k.cross_check() <= 1e-12, "d={d} {kind:?}: {}", k.cross_check());
            }
        }
    }

    #[test]
    fn pauli_star_product() {
        let set = construct_mub(2).unwrap();
        let s = scheme(&set);
        let k = kernel(&set, KernelKind::Ordinary).unwrap();
        let prod = star_multiply(&symbol(&pauli_x(), &s).unwrap(), &symbol(&pauli_y(), &s).unwrap(), &k).unwrap();
        let expected = symbol(&pauli_z().scale(I), &s).unwrap();
        assert!(prod.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn star_products_match_matrix_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for d in [2, 3] {
            let set = construct_mub(d).unwrap();
            let s = scheme(&set);
            let ko = kernel(&set, KernelKind::Ordinary).unwrap();
            let kd = kernel(&set, KernelKind::Dual).unwrap();
            for _ in 0..10 {
                let (a, b) = (random_operator(d, &mut rng), random_operator(d, &mut rng));
                let ab = a.matmul(&b).unwrap();
                let prod = star_multiply(&symbol(&a, &s).unwrap(), &symbol(&b, &s).unwrap(), &ko).unwrap();
                assert!(prod.max_abs_diff(&symbol(&ab, &s).unwrap()) < 1e-10);
                let prod = star_multiply(&dual_symbol(&a, &s).unwrap(), &dual_symbol(&b, &s).unwrap(), &kd).unwrap();
                assert!(prod.max_abs_diff(&dual_symbol(&ab, &s).unwrap()) < 1e-10);
            }
        }
    }

    #[test]
    fn identity_is_star_unit_and_product_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let set = construct_mub(3).unwrap();
        let s = scheme(&set);
        let k = kernel(&set, KernelKind::Ordinary).unwrap();
        let unit = symbol(&ComplexMatrix::identity(3), &s).unwrap();
        let (a, b, c) = (random_operator(3, &mut rng), random_operator(3, &mut rng), random_operator(3, &mut rng));
        let (fa, fb, fc) = (symbol(&a, &s).unwrap(), symbol(&b, &s).unwrap(), symbol(&c, &s).unwrap());
        assert!(star_multiply(&unit, &fa, &k).unwrap().max_abs_diff(&fa) < 1e-12);
        let left = star_multiply(&star_multiply(&fa, &fb, &k).unwrap(), &fc, &k).unwrap();
        let right = star_multiply(&fa, &star_multiply(&fb, &fc, &k).unwrap(), &k).unwrap();
        assert!(left.max_abs_diff(&right) < 1e-10);
    }

    #[test]
    fn star_multiply_rejects_kind_and_shape_mismatch() {
        let set = construct_mub(2).unwrap();
        let s = scheme(&set);
        let k = kernel(&set, KernelKind::Ordinary).unwrap();
        let f = symbol(&pauli_x(), &s).unwrap();
        let g = dual_symbol(&pauli_x(), &s).unwrap();
        assert!(matches!(star_multiply(&f, &g, &k), Err(Error::Shape(_))));
        let f3 = symbol(&ComplexMatrix::identity(3), &scheme(&construct_mub(3).unwrap())).unwrap();
        assert!(star_multiply(&f, &f3, &k).is_err());
    }

    #[test]
    fn trace_chain_matches_manual_products() {
        let a = pauli_x();
        let b = pauli_y();
        let c = pauli_z();
        let manual = a.product(&b).product(&c).trace().unwrap();
        assert!((trace_chain(&[&a, &b, &c]) - manual).norm() < 1e-15);
        assert!((trace_chain(&[&a]) - a.trace().unwrap()).norm() < 1e-15);
    }
}
