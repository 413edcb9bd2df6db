//! The identity suite behind `mubtomo verify`.

use mubtomo::mub::{construct_mub, projectors, validate_mub, InvariantCheck};
use mubtomo::qubit::qubit_checks;
use mubtomo::random::{random_density_matrix, random_operator};
use mubtomo::report::{CheckReport, SweepPlan};
use mubtomo::starprod::{
    check_four_product, check_jacobi, check_kernel_associativity, check_lie_closure, check_structure_constant_sums,
    check_triple_product_relation, check_triple_product_symmetry, dual_symbol, kernel, scheme, star_multiply,
    structure_constants, symbol, triple_products, KernelKind, KERNEL_CROSS_CHECK_TOL,
};
use mubtomo::tomography::{
    coefficients_from_tomogram, inversion_matrix, reconstruct, scan, solve_coefficients_linear, state_from_coefficients,
};
use mubtomo::Tolerances;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::args::Level;
use crate::error::CliError;

pub const RANDOM_STATES: usize = 10;
pub const RANDOM_PAIRS: usize = 10;
/// Ordinary-kernel entry and offset used by the fault-injection self-test.
pub const FAULT_ENTRY: (usize, usize, usize) = (0, 1, 2);
pub const FAULT_DELTA: f64 = 1e-3;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationData {
    pub level: Level,
    pub seed: u64,
    pub plan: SweepPlan,
    pub fault_injected: bool,
    pub passed: bool,
    pub failed: Vec<String>,
    pub checks: Vec<CheckReport>,
}

fn scalar(name: &str, tolerance: f64, violation: f64, count: u64) -> CheckReport {
    CheckReport {
        name: name.to_string(),
        passed: violation <= tolerance,
        tolerance,
        max_violation: violation,
        argmax: Vec::new(),
        tuples_checked: count,
        plan: SweepPlan::Exhaustive,
    }
}

fn from_invariant(name: &str, tol: f64, c: &InvariantCheck, count: u64) -> CheckReport {
    CheckReport {
        name: name.to_string(),
        passed: c.passed,
        tolerance: tol,
        max_violation: c.max_deviation,
        argmax: c.worst_pair.map(|(x, y)| vec![x, y]).unwrap_or_default(),
        tuples_checked: count,
        plan: SweepPlan::Exhaustive,
    }
}

pub fn plan_for(dim: usize, level: Level, seed: u64) -> SweepPlan {
    match level {
        Level::Quick => SweepPlan::default_for(dim, seed),
        Level::Exhaustive => SweepPlan::Exhaustive,
    }
}

pub fn run(dim: usize, level: Level, seed: u64, inject_fault: bool) -> Result<VerificationData, CliError> {
    let set = construct_mub(dim)?;
    let proj = projectors(&set);
    let plan = plan_for(dim, level, seed);
    let n = (dim * (dim + 1)) as u64;
    let mut checks = Vec::new();

    let validation = validate_mub(&set, 1e-12);
    checks.push(from_invariant("mub_orthonormality", 1e-12, &validation.orthonormality, n * n));
    checks.push(from_invariant("mub_unbiasedness", 1e-12, &validation.unbiasedness, n * n));
    checks.push(scalar("projector_trace_relation", 1e-12, proj.trace_relation_defect(), n * n));

    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut roundtrip, mut coeff_route, mut linear_route) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..RANDOM_STATES {
        let rho = random_density_matrix(dim, &mut rng);
        let tom = scan(&rho, &set, &tol)?;
        let direct = reconstruct(&tom, &set, &tol)?.matrix;
        roundtrip = roundtrip.max(direct.max_abs_diff(rho.matrix()));
        let closed = state_from_coefficients(&coefficients_from_tomogram(&tom), &set)?;
        coeff_route = coeff_route.max(closed.max_abs_diff(&direct));
        let linear = state_from_coefficients(&solve_coefficients_linear(&tom), &set)?;
        linear_route = linear_route.max(linear.max_abs_diff(&direct));
    }
    let states = RANDOM_STATES as u64;
    checks.push(scalar("reconstruction_roundtrip", 1e-10, roundtrip, states));
    checks.push(scalar("coefficient_route", 1e-12, coeff_route, states));
    checks.push(scalar("block_inverse_route", 1e-12, linear_route, states));
    checks.push(scalar("inversion_matrix_inverse", 1e-12, inversion_matrix(dim)?.inverse_defect(), 1));

    let mut ordinary = kernel(&set, KernelKind::Ordinary)?;
    let dual = kernel(&set, KernelKind::Dual)?;
    if inject_fault {
        let (a, b, c) = FAULT_ENTRY;
        ordinary.perturb(a, b, c, Complex64::new(FAULT_DELTA, 0.0));
    }
    checks.push(scalar("kernel_two_route_ordinary", KERNEL_CROSS_CHECK_TOL, ordinary.cross_check(), n * n * n));
    checks.push(scalar("kernel_two_route_dual", KERNEL_CROSS_CHECK_TOL, dual.cross_check(), n * n * n));

    let sch = scheme(&set);
    let (mut star_ord, mut star_dual) = (0.0f64, 0.0f64);
    for _ in 0..RANDOM_PAIRS {
        let (a, b) = (random_operator(dim, &mut rng), random_operator(dim, &mut rng));
        let ab = a.matmul(&b)?;
        let got = star_multiply(&symbol(&a, &sch)?, &symbol(&b, &sch)?, &ordinary)?;
        star_ord = star_ord.max(got.max_abs_diff(&symbol(&ab, &sch)?));
        let got = star_multiply(&dual_symbol(&a, &sch)?, &dual_symbol(&b, &sch)?, &dual)?;
        star_dual = star_dual.max(got.max_abs_diff(&dual_symbol(&ab, &sch)?));
    }
    checks.push(scalar("star_product_ordinary", 1e-10, star_ord, RANDOM_PAIRS as u64));
    checks.push(scalar("star_product_dual", 1e-10, star_dual, RANDOM_PAIRS as u64));

    checks.push(check_kernel_associativity(&ordinary, plan, 1e-12));
    checks.push(check_kernel_associativity(&dual, plan, 1e-12));

    let t = triple_products(&set);
    checks.extend(check_triple_product_symmetry(&t, 1e-12));
    checks.push(check_triple_product_relation(&t, plan, 1e-12));
    checks.push(check_four_product(&t, &proj, plan, 1e-10));

    let j = structure_constants(&t)?;
    checks.push(scalar("structure_constants_real_part", 1e-12, j.real_residue(), n * n * n));
    checks.extend(check_structure_constant_sums(&j, 1e-12));
    let lie = check_lie_closure(&proj, &j, plan, 1e-12)?;
    checks.push(lie.projectors);
    checks.push(lie.povm);
    checks.push(check_jacobi(&proj, &j, plan, 1e-10));

    if dim == 2 {
        checks.extend(qubit_checks()?);
    }

    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
    Ok(VerificationData { level, seed, plan, fault_injected: inject_fault, passed: failed.is_empty(), failed, checks })
}
