//! Algebraic identities of MUB projectors, checked numerically.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, I};
use crate::mub::{overlap, CompositeIndex, ProjectorSet};
use crate::report::{CheckReport, SweepPlan, ViolationTracker};

use super::tensor::{trace_chain, KernelTensor, TripleProductTensor};

fn ov(d: usize, x: usize, y: usize) -> f64 {
    overlap(d, CompositeIndex::from_flat(x, d), CompositeIndex::from_flat(y, d))
}

/// Compares `Σ_y K(x₁,x₂,y) K(y,x₃,x)` with `Σ_y K(x₁,y,x) K(x₂,x₃,y)`.
pub fn check_kernel_associativity(k: &KernelTensor, plan: SweepPlan, tol: f64) -> CheckReport {
    let n = k.n();
    let mut tracker = ViolationTracker::new(k.dim());
    let count = plan.for_each_tuple(n, 4, |t| {
        let (x1, x2, x3, x) = (t[0], t[1], t[2], t[3]);
        let mut left = Complex64::new(0.0, 0.0);
        let mut right = Complex64::new(0.0, 0.0);
        for y in 0..n {
            left += k.at(x1, x2, y) * k.at(y, x3, x);
            right += k.at(x1, y, x) * k.at(x2, x3, y);
        }
        tracker.record((left - right).norm(), t);
    });
    let name = match k.kind() {
        super::KernelKind::Ordinary => "kernel_associativity_ordinary",
        super::KernelKind::Dual => "kernel_associativity_dual",
    };
    tracker.finish(name, tol, count, plan)
}

/// `Σ_c (T_{x₁x₂c}T_{c x₃x₄} − T_{x₁c x₄}T_{x₂x₃c})` against the overlap products
/// `o(x₁,x₂)o(x₃,x₄) − o(x₁,x₄)o(x₂,x₃)`.
pub fn check_triple_product_relation(t: &TripleProductTensor, plan: SweepPlan, tol: f64) -> CheckReport {
    let (d, n) = (t.dim(), t.n());
    let mut tracker = ViolationTracker::new(d);
    let count = plan.for_each_tuple(n, 4, |tuple| {
        let (a, b, k, l) = (tuple[0], tuple[1], tuple[2], tuple[3]);
        let mut left = Complex64::new(0.0, 0.0);
        for c in 0..n {
            left += t.at(a, b, c) * t.at(c, k, l) - t.at(a, c, l) * t.at(b, k, c);
        }
        let right = ov(d, a, b) * ov(d, k, l) - ov(d, a, l) * ov(d, b, k);
        tracker.record((left - right).norm(), tuple);
    });
    tracker.finish("triple_product_relation", tol, count, plan)
}

fn four_product_flat(t: &TripleProductTensor, x1: usize, x2: usize, x3: usize, x4: usize) -> Complex64 {
    let d = t.dim();
    let sum: Complex64 = (0..t.n()).map(|c| t.at(x1, x2, c) * t.at(c, x3, x4)).sum();
    sum - ov(d, x1, x2) * ov(d, x3, x4)
}

/// `Tr[Π₁Π₂Π₃Π₄]` from the triple-product formula.
pub fn four_product(t: &TripleProductTensor, x: [CompositeIndex; 4]) -> Result<Complex64> {
    let d = t.dim();
    let [a, b, c, e] = x.map(|i| i.checked_flat(d));
    Ok(four_product_flat(t, a?, b?, c?, e?))
}

/// `Tr[Π₁Π₂Π₃Π₄]` by direct matrix products.
pub fn four_product_direct(proj: &ProjectorSet, x: [CompositeIndex; 4]) -> Result<Complex64> {
    let d = proj.dim();
    let mut mats = Vec::with_capacity(4);
    for i in x {
        mats.push(proj.flat(i.checked_flat(d)?));
    }
    Ok(trace_chain(&mats))
}

pub fn check_four_product(t: &TripleProductTensor, proj: &ProjectorSet, plan: SweepPlan, tol: f64) -> CheckReport {
    let mut tracker = ViolationTracker::new(t.dim());
    let p = proj.as_slice();
    let count = plan.for_each_tuple(t.n(), 4, |x| {
        let formula = four_product_flat(t, x[0], x[1], x[2], x[3]);
        let direct = trace_chain(&[&p[x[0]], &p[x[1]], &p[x[2]], &p[x[3]]]);
        tracker.record((formula - direct).norm(), x);
    });
    tracker.finish("four_product", tol, count, plan)
}

/// Cyclic symmetry `T₁₂₃ = T₂₃₁` and swap conjugation `T₁₂₃ = conj(T₂₁₃)`, exhaustively.
pub fn check_triple_product_symmetry(t: &TripleProductTensor, tol: f64) -> [CheckReport; 2] {
    let mut cyclic = ViolationTracker::new(t.dim());
    let mut swap = ViolationTracker::new(t.dim());
    let plan = SweepPlan::Exhaustive;
    let count = plan.for_each_tuple(t.n(), 3, |x| {
        let v = t.at(x[0], x[1], x[2]);
        cyclic.record((v - t.at(x[1], x[2], x[0])).norm(), x);
        swap.record((v - t.at(x[1], x[0], x[2]).conj()).norm(), x);
    });
    [
        cyclic.finish("triple_product_cyclic", tol, count, plan),
        swap.finish("triple_product_swap_conjugation", tol, count, plan),
    ]
}

/// Real `J` with `T_{x₁x₂x₃} − T_{x₂x₁x₃} = i J_{x₁x₂x₃}`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    n: usize,
    j: Vec<f64>,
    real_residue: f64,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, x1: usize, x2: usize, x3: usize) -> f64 {
        self.j[(x1 * self.n + x2) * self.n + x3]
    }

    pub fn get(&self, x1: CompositeIndex, x2: CompositeIndex, x3: CompositeIndex) -> f64 {
        self.at(x1.flat(self.dim), x2.flat(self.dim), x3.flat(self.dim))
    }

    /// Largest real part seen in `T₁₂₃ − T₂₁₃`, which must vanish.
    pub fn real_residue(&self) -> f64 {
        self.real_residue
    }

    /// The coefficients of `[Π_{x₁}, Π_{x₂}]` in the projector family: `i J_{x₁x₂c}`.
    fn commutator_coefficients(&self, x1: usize, x2: usize) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.n).map(move |c| I * self.at(x1, x2, c))
    }
}

/// Tolerance on the real part of `T₁₂₃ − T₂₁₃`.
pub const STRUCTURE_REAL_TOL: f64 = 1e-12;

pub fn structure_constants(t: &TripleProductTensor) -> Result<StructureConstants> {
    let n = t.n();
    let mut j = Vec::with_capacity(n * n * n);
    let mut real_residue: f64 = 0.0;
    for x1 in 0..n {
        for x2 in 0..n {
            for x3 in 0..n {
                let diff = t.at(x1, x2, x3) - t.at(x2, x1, x3);
                let residue = diff.re.abs();
                if residue.is_nan() || residue > STRUCTURE_REAL_TOL {
                    return Err(Error::Consistency(format!(
                        "T - T^swap has real part {:e} at {:?}",
                        diff.re,
                        [x1, x2, x3].map(|k| CompositeIndex::from_flat(k, t.dim()))
                    )));
                }
                real_residue = real_residue.max(residue);
                j.push(diff.im);
            }
        }
    }
    Ok(StructureConstants { dim: t.dim(), n, j, real_residue })
}

/// Antisymmetry `J₁₂₃ = −J₂₁₃` and the sum rule `Σ_γ J_{x₁,x₂,(c,γ)} = 0`, exhaustively.
pub fn check_structure_constant_sums(j: &StructureConstants, tol: f64) -> [CheckReport; 2] {
    let (d, n) = (j.dim, j.n);
    let plan = SweepPlan::Exhaustive;
    let mut anti = ViolationTracker::new(d);
    let pairs = plan.for_each_tuple(n, 3, |x| anti.record((j.at(x[0], x[1], x[2]) + j.at(x[1], x[0], x[2])).abs(), x));
    let mut sums = ViolationTracker::new(d);
    let mut count = 0;
    for x1 in 0..n {
        for x2 in 0..n {
            for c in 0..=d {
                let s: f64 = (0..d).map(|g| j.at(x1, x2, c * d + g)).sum();
                sums.record(s.abs(), &[x1, x2, c * d]);
                count += 1;
            }
        }
    }
    [
        anti.finish("structure_constant_antisymmetry", tol, pairs, plan),
        sums.finish("structure_constant_gamma_sum", tol, count, plan),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LieClosureReport {
    /// `[Π₁, Π₂] = Σ_c i J₁₂c Π_c`
    pub projectors: CheckReport,
    /// `[E₁, E₂] = (d+1)⁻¹ Σ_c i J₁₂c E_c`
    pub povm: CheckReport,
}

impl LieClosureReport {
    pub fn passed(&self) -> bool {
        self.projectors.passed && self.povm.passed
    }
}

fn expand(coefficients: impl Iterator<Item = Complex64>, family: &[ComplexMatrix], dim: usize) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for (c, op) in coefficients.zip(family) {
        acc.add_scaled_in_place(c, op);
    }
    acc
}

/// Compares matrix commutators with their structure-constant expansions,
/// entrywise, for projectors and for MUB-POVM effects.
pub fn check_lie_closure(proj: &ProjectorSet, j: &StructureConstants, plan: SweepPlan, tol: f64) -> Result<LieClosureReport> {
    let d = proj.dim();
    if j.dim != d {
        return Err(Error::shape(format!("structure constants for d={} with projectors for d={d}", j.dim)));
    }
    let p = proj.as_slice();
    let w = 1.0 / (d + 1) as f64;
    let effects: Vec<ComplexMatrix> = p.iter().map(|m| m.scale_real(w)).collect();
    let mut proj_tracker = ViolationTracker::new(d);
    let mut povm_tracker = ViolationTracker::new(d);
    let count = plan.for_each_tuple(p.len(), 2, |x| {
        let (x1, x2) = (x[0], x[1]);
        let comm = p[x1].product(&p[x2]).sub(&p[x2].product(&p[x1])).expect("same shape");
        let expansion = expand(j.commutator_coefficients(x1, x2), p, d);
        proj_tracker.record(comm.max_abs_diff(&expansion), x);

        let e_comm = effects[x1].product(&effects[x2]).sub(&effects[x2].product(&effects[x1])).expect("same shape");
        let e_expansion = expand(j.commutator_coefficients(x1, x2).map(|c| c * w), &effects, d);
        povm_tracker.record(e_comm.max_abs_diff(&e_expansion), x);
    });
    Ok(LieClosureReport {
        projectors: proj_tracker.finish("lie_closure_projectors", tol, count, plan),
        povm: povm_tracker.finish("lie_closure_povm", tol, count, plan),
    })
}

/// Jacobi identity for the algebra defined by `iJ`: the operator
/// `Σ_cyc [Π₁, [Π₂, Π₃]]`, with every bracket expanded through structure
/// constants, must vanish.
pub fn check_jacobi(proj: &ProjectorSet, j: &StructureConstants, plan: SweepPlan, tol: f64) -> CheckReport {
    let d = proj.dim();
    let n = j.n;
    let p = proj.as_slice();
    let mut tracker = ViolationTracker::new(d);
    let count = plan.for_each_tuple(n, 3, |x| {
        let mut coeff = vec![Complex64::new(0.0, 0.0); n];
        for (a, b, c) in [(x[0], x[1], x[2]), (x[1], x[2], x[0]), (x[2], x[0], x[1])] {
            // [Π_a, [Π_b, Π_c]] = Σ_y iJ_{bcy} Σ_z iJ_{ayz} Π_z
            for y in 0..n {
                let outer = j.at(b, c, y);
                if outer == 0.0 {
                    continue;
                }
                for (z, slot) in coeff.iter_mut().enumerate() {
                    *slot -= outer * j.at(a, y, z);
                }
            }
        }
        let op = expand(coeff.into_iter(), p, d);
        tracker.record(op.max_abs(), x);
    });
    tracker.finish("jacobi_identity", tol, count, plan)
}
