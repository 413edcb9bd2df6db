//! Kernels converting symbols of one star-product scheme into another.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::StarScheme;

/// `K(ξ, x) = Tr[D̂_from(ξ) Û_to(x)]`, so that `f_to(x) = Σ_ξ f_from(ξ) K(ξ, x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntertwiningKernel {
    rows: usize,
    cols: usize,
    values: Vec<Complex64>,
}

impl IntertwiningKernel {
    /// Size of the source index set.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Size of the target index set.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, from: usize, to: usize) -> Complex64 {
        self.values[from * self.cols + to]
    }

    pub fn transport(&self, symbol: &[Complex64]) -> Result<Vec<Complex64>> {
        if symbol.len() != self.rows {
            return Err(Error::shape(format!("symbol has {} values, kernel expects {}", symbol.len(), self.rows)));
        }
        Ok((0..self.cols).map(|x| symbol.iter().enumerate().map(|(xi, f)| f * self.get(xi, x)).sum()).collect())
    }
}

pub fn intertwining_kernel<A: StarScheme + ?Sized, B: StarScheme + ?Sized>(from: &A, to: &B) -> Result<IntertwiningKernel> {
    if from.dim() != to.dim() {
        return Err(Error::shape(format!("schemes act on dimensions {} and {}", from.dim(), to.dim())));
    }
    let (rows, cols) = (from.len(), to.len());
    let mut values = Vec::with_capacity(rows * cols);
    for q in from.quantizers() {
        for u in to.dequantizers() {
            values.push(q.trace_product_unchecked(u));
        }
    }
    Ok(IntertwiningKernel { rows, cols, values })
}
