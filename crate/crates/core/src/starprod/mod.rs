//! The MUB star-product scheme.
//!
//! Dequantizers are the MUB projectors `Û_{aα} = Π_{aα}` and quantizers are
//! `D̂_{aα} = Π_{aα} − I/(d+1)`. An operator `A` is represented by its symbol
//! `f_A(aα) = Tr[A Û_{aα}]` and recovered as `Σ f_A(aα) D̂_{aα}`; the dual
//! scheme swaps the two families.

mod identities;
mod intertwine;
mod tensor;

pub use identities::{
    check_four_product, check_jacobi, check_kernel_associativity, check_lie_closure, check_structure_constant_sums,
    check_triple_product_relation, check_triple_product_symmetry, four_product, four_product_direct,
    structure_constants, LieClosureReport, StructureConstants, STRUCTURE_REAL_TOL,
};
pub use intertwine::{intertwining_kernel, IntertwiningKernel};
pub use tensor::{
    kernel, kernel_by_trace, kernel_from_triple_products, star_multiply, triple_products, triple_products_from,
    KernelKind, KernelTensor,
    Rank3, TripleProductTensor, KERNEL_CROSS_CHECK_TOL,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::mub::{grid_len, overlap, projectors, CompositeIndex, MubSet, ProjectorSet};

/// A dequantizer/quantizer pair over some discrete index set.
pub trait StarScheme {
    fn dim(&self) -> usize;
    fn dequantizers(&self) -> &[ComplexMatrix];
    fn quantizers(&self) -> &[ComplexMatrix];

    fn len(&self) -> usize {
        self.dequantizers().len()
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `f(x) = Tr[A Û(x)]`.
    fn symbol_values(&self, op: &ComplexMatrix) -> Result<Vec<Complex64>> {
        check_operator(op, self.dim())?;
        Ok(self.dequantizers().iter().map(|u| op.trace_product_unchecked(u)).collect())
    }

    /// `f^d(x) = Tr[A D̂(x)]`.
    fn dual_symbol_values(&self, op: &ComplexMatrix) -> Result<Vec<Complex64>> {
        check_operator(op, self.dim())?;
        Ok(self.quantizers().iter().map(|q| op.trace_product_unchecked(q)).collect())
    }

    /// `A = Σ f(x) D̂(x)`.
    fn operator_from_values(&self, values: &[Complex64]) -> Result<ComplexMatrix> {
        weighted_sum(self.dim(), values, self.quantizers())
    }

    /// `A = Σ f^d(x) Û(x)`.
    fn operator_from_dual_values(&self, values: &[Complex64]) -> Result<ComplexMatrix> {
        weighted_sum(self.dim(), values, self.dequantizers())
    }
}

fn check_operator(op: &ComplexMatrix, dim: usize) -> Result<()> {
    if op.rows() != dim || op.cols() != dim {
        return Err(Error::shape(format!("operator is {}x{}, scheme dimension is {dim}", op.rows(), op.cols())));
    }
    Ok(())
}

fn weighted_sum(dim: usize, values: &[Complex64], ops: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    if values.len() != ops.len() {
        return Err(Error::shape(format!("symbol has {} values, scheme has {}", values.len(), ops.len())));
    }
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for (&f, op) in values.iter().zip(ops) {
        acc.add_scaled_in_place(f, op);
    }
    Ok(acc)
}

/// The MUB dequantizer/quantizer pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemePair {
    dim: usize,
    dequantizers: Vec<ComplexMatrix>,
    quantizers: Vec<ComplexMatrix>,
}

impl StarScheme for SchemePair {
    fn dim(&self) -> usize {
        self.dim
    }

    fn dequantizers(&self) -> &[ComplexMatrix] {
        &self.dequantizers
    }

    fn quantizers(&self) -> &[ComplexMatrix] {
        &self.quantizers
    }
}

impl SchemePair {
    pub fn from_projectors(proj: &ProjectorSet) -> Self {
        let d = proj.dim();
        let shift = ComplexMatrix::identity(d).scale_real(1.0 / (d + 1) as f64);
        SchemePair {
            dim: d,
            dequantizers: proj.as_slice().to_vec(),
            quantizers: proj.as_slice().iter().map(|p| p.sub(&shift).expect("same shape")).collect(),
        }
    }

    pub fn dequantizer(&self, x: CompositeIndex) -> &ComplexMatrix {
        &self.dequantizers[x.flat(self.dim)]
    }

    pub fn quantizer(&self, x: CompositeIndex) -> &ComplexMatrix {
        &self.quantizers[x.flat(self.dim)]
    }
}

pub fn scheme(set: &MubSet) -> SchemePair {
    SchemePair::from_projectors(&projectors(set))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolKind {
    Ordinary,
    Dual,
}

/// A function on the `(a, α)` grid representing an operator.
#[derive(Debug, Clone, PartialEq)]
pub struct MubSymbol {
    dim: usize,
    kind: SymbolKind,
    values: Vec<Complex64>,
}

impl MubSymbol {
    pub fn new(dim: usize, kind: SymbolKind, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid_len(dim) {
            return Err(Error::shape(format!("symbol for dimension {dim} needs {} values", grid_len(dim))));
        }
        Ok(MubSymbol { dim, kind, values })
    }

    pub fn from_real(dim: usize, kind: SymbolKind, values: &[f64]) -> Result<Self> {
        Self::new(dim, kind, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, basis: usize, state: usize) -> Complex64 {
        self.values[basis * self.dim + state]
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &MubSymbol) -> f64 {
        if self.values.len() != other.values.len() {
            return f64::INFINITY;
        }
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

pub fn symbol(op: &ComplexMatrix, scheme: &SchemePair) -> Result<MubSymbol> {
    MubSymbol::new(scheme.dim, SymbolKind::Ordinary, scheme.symbol_values(op)?)
}

pub fn dual_symbol(op: &ComplexMatrix, scheme: &SchemePair) -> Result<MubSymbol> {
    MubSymbol::new(scheme.dim, SymbolKind::Dual, scheme.dual_symbol_values(op)?)
}

/// Inverts [`symbol`] or [`dual_symbol`], depending on the symbol's kind.
pub fn operator_from_symbol(sym: &MubSymbol, scheme: &SchemePair) -> Result<ComplexMatrix> {
    if sym.dim != scheme.dim {
        return Err(Error::shape(format!("symbol dimension {} vs scheme dimension {}", sym.dim, scheme.dim)));
    }
    match sym.kind {
        SymbolKind::Ordinary => scheme.operator_from_values(&sym.values),
        SymbolKind::Dual => scheme.operator_from_dual_values(&sym.values),
    }
}

/// `𝔇(x₁; x) = Tr[D̂(x₁) Û(x)]` on the MUB grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaFunction {
    dim: usize,
    values: Vec<f64>,
}

impl DeltaFunction {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, x1: CompositeIndex, x: CompositeIndex) -> f64 {
        let n = grid_len(self.dim);
        self.values[x1.flat(self.dim) * n + x.flat(self.dim)]
    }

    /// `Σ_{x₁} 𝔇(x₁, x) f(x₁)`.
    pub fn apply(&self, sym: &MubSymbol) -> Result<Vec<Complex64>> {
        let n = grid_len(self.dim);
        if sym.values.len() != n {
            return Err(Error::shape("symbol and delta function dimensions differ"));
        }
        Ok((0..n).map(|x| (0..n).map(|x1| sym.values[x1] * self.values[x1 * n + x]).sum()).collect())
    }
}

/// Closed form `1/(d(d+1)) + δ_{ab}(δ_{αβ} − 1/d)`, verified entrywise against
/// `Tr[D̂ Û]`; disagreement beyond `KERNEL_CROSS_CHECK_TOL` is a consistency error.
pub fn delta_function(scheme: &SchemePair) -> Result<DeltaFunction> {
    let d = scheme.dim;
    let n = grid_len(d);
    let base = 1.0 / (d * (d + 1)) as f64;
    let mut values = Vec::with_capacity(n * n);
    for x1 in 0..n {
        for x in 0..n {
            let (c1, c) = (CompositeIndex::from_flat(x1, d), CompositeIndex::from_flat(x, d));
            let formula = base + if c1.basis == c.basis { overlap(d, c1, c) - 1.0 / d as f64 } else { 0.0 };
            let traced = scheme.quantizers[x1].trace_product_unchecked(&scheme.dequantizers[x]);
            let diff = (traced - formula).norm();
            if diff.is_nan() || diff > KERNEL_CROSS_CHECK_TOL {
                return Err(Error::Consistency(format!(
                    "delta function entry ({c1:?}, {c:?}): formula {formula} vs trace {traced}"
                )));
            }
            values.push(formula);
        }
    }
    Ok(DeltaFunction { dim: d, values })
}
