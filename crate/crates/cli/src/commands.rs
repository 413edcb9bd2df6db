use mubtomo::mub::{construct_mub, validate_mub};
use mubtomo::qubit::{intertwine_mub_to_sic, intertwine_sic_to_mub};
use mubtomo::sim::{estimate, frequencies, sample};
use mubtomo::starprod::{MubSymbol, SymbolKind};
use mubtomo::tomography::{reconstruct, scan};
use mubtomo::{DensityMatrix, MubSet, Tolerances, Tomogram};
use num_complex::Complex64;
use serde::Serialize;

use crate::args::{Command, Direction};
use crate::doc::{self, *};
use crate::error::CliError;
use crate::{json, verify};

/// Rendered output of a command. `failure` is reported after the output is
/// written (a failed verification still produces its report).
#[derive(Debug)]
pub struct Outcome {
    pub out: String,
    pub text: String,
    pub failure: Option<CliError>,
}

pub struct Context<'a> {
    pub tol: Tolerances,
    pub invocation: &'a [String],
}

impl Context<'_> {
    fn render<T: Serialize>(&self, schema: &str, dim: usize, data: T, out: &str) -> Result<Outcome, CliError> {
        let text = json::to_string(&Document::new(schema, dim, self.invocation, data))
            .map_err(|e| CliError::Invariant(format!("serializing output: {e}")))?;
        Ok(Outcome { out: out.to_string(), text, failure: None })
    }
}

fn load_state(path: &str, tol: &Tolerances) -> Result<DensityMatrix, CliError> {
    let d: Document<DensityMatrixData> = read_document(path, doc::DENSITY_MATRIX)?;
    let m = rows_to_matrix(&d.data.matrix)?;
    if !m.is_square() || m.rows() != d.dimension {
        return Err(CliError::input(format!(
            "{path}: matrix is {}x{}, declared dimension {}",
            m.rows(),
            m.cols(),
            d.dimension
        )));
    }
    DensityMatrix::new(m, tol).map_err(|e| CliError::Invariant(format!("{path}: {e}")))
}

fn load_mub(path: Option<&str>, dim: usize, tol: &Tolerances) -> Result<MubSet, CliError> {
    let Some(path) = path else {
        return Ok(construct_mub(dim)?);
    };
    let d: Document<MubSetData> = read_document(path, doc::MUB_SET)?;
    if d.dimension != dim {
        return Err(CliError::input(format!("{path}: MUB dimension {} does not match {dim}", d.dimension)));
    }
    let set = d.data.to_set(d.dimension).map_err(|e| CliError::input(format!("{path}: {e}")))?;
    let v = validate_mub(&set, tol.norm);
    if !v.passed {
        return Err(CliError::Invariant(format!(
            "{path}: not a MUB family (orthonormality defect {:e}, unbiasedness defect {:e}, tolerance {:e})",
            v.orthonormality.max_deviation, v.unbiasedness.max_deviation, tol.norm
        )));
    }
    Ok(set)
}

fn symbol_grid(sym: &MubSymbol) -> Vec<Vec<Cx>> {
    sym.values().chunks(sym.dim()).map(|row| row.iter().map(|&z| Cx::from(z)).collect()).collect()
}

pub fn execute(cmd: &Command, ctx: &Context) -> Result<Outcome, CliError> {
    let tol = &ctx.tol;
    match cmd {
        Command::Construct { dim, out } => {
            let set = construct_mub(*dim)?;
            ctx.render(doc::MUB_SET, *dim, MubSetData::from_set(&set), out)
        }
        Command::Tomogram { state, mub, out } => {
            let rho = load_state(state, tol)?;
            let set = load_mub(mub.as_deref(), rho.dim(), tol)?;
            let tom = scan(&rho, &set, tol)?;
            ctx.render(doc::TOMOGRAM, rho.dim(), TomogramData::from_tomogram(&tom), out)
        }
        Command::Reconstruct { tomogram, mub, out } => {
            let d: Document<TomogramData> = read_document(tomogram, doc::TOMOGRAM)?;
            let tom = Tomogram::from_rows(d.dimension, &d.data.probabilities)
                .map_err(|e| CliError::input(format!("{tomogram}: {e}")))?;
            let set = load_mub(mub.as_deref(), d.dimension, tol)?;
            let r = reconstruct(&tom, &set, tol)?;
            let data = DensityMatrixData {
                matrix: matrix_to_rows(&r.matrix),
                diagnostics: Some(ReconstructionDiagnostics {
                    min_eigenvalue: r.min_eigenvalue,
                    is_positive: r.is_positive,
                    normalization_defect: r.normalization.worst(),
                    normalization_warning: r.normalization_warning,
                }),
            };
            ctx.render(doc::DENSITY_MATRIX, d.dimension, data, out)
        }
        Command::Simulate { state, mub, shots, seed, repair, out } => {
            let rho = load_state(state, tol)?;
            let set = load_mub(mub.as_deref(), rho.dim(), tol)?;
            let record = sample(&rho, &set, *shots, *seed)?;
            let est = estimate(&record, &set, (*repair).into())?;
            let data = SimulationData {
                frequencies: frequencies(&record).rows(),
                estimate: EstimateData {
                    repair: est.repair,
                    matrix: matrix_to_rows(&est.matrix),
                    min_eigenvalue_before: est.min_eigenvalue_before,
                    trace_distance_moved: est.trace_distance_moved,
                },
                record,
            };
            ctx.render(doc::SIMULATION, rho.dim(), data, out)
        }
        Command::Verify { dim, level, seed, out, inject_fault } => {
            let data = verify::run(*dim, *level, *seed, *inject_fault)?;
            let failure = (!data.passed).then(|| {
                let detail: Vec<String> = data
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| {
                        let at: Vec<String> = c.argmax.iter().map(|x| format!("({},{})", x.basis, x.state)).collect();
                        format!("{} (max violation {:e} > {:e} at [{}])", c.name, c.max_violation, c.tolerance, at.join(", "))
                    })
                    .collect();
                CliError::VerificationFailed(detail.join("; "))
            });
            let mut outcome = ctx.render(doc::VERIFICATION, *dim, data, out)?;
            outcome.failure = failure;
            Ok(outcome)
        }
        Command::Intertwine { direction, symbol, out } => match direction {
            Direction::Sic2mub => {
                let d: Document<SicSymbolData> = read_document(symbol, doc::SIC_SYMBOL)?;
                if d.dimension != 2 {
                    return Err(CliError::input(format!("{symbol}: SIC symbols are qubit symbols, got dimension {}", d.dimension)));
                }
                let values: Vec<Complex64> = d.data.values.iter().map(|&c| c.into()).collect();
                let m = intertwine_sic_to_mub(&values).map_err(|e| CliError::input(format!("{symbol}: {e}")))?;
                ctx.render(doc::MUB_SYMBOL, 2, MubSymbolData { kind: SymbolKind::Ordinary, values: symbol_grid(&m) }, out)
            }
            Direction::Mub2sic => {
                let d: Document<MubSymbolData> = read_document(symbol, doc::MUB_SYMBOL)?;
                if d.data.kind != SymbolKind::Ordinary {
                    return Err(CliError::input(format!("{symbol}: SIC transport takes an ordinary symbol")));
                }
                let dim = d.dimension;
                if d.data.values.len() != dim + 1 || d.data.values.iter().any(|r| r.len() != dim) {
                    return Err(CliError::input(format!("{symbol}: symbol grid must be {}x{dim}", dim + 1)));
                }
                let flat = d.data.values.iter().flatten().map(|&c| c.into()).collect();
                let m = MubSymbol::new(dim, SymbolKind::Ordinary, flat)?;
                let s = intertwine_mub_to_sic(&m).map_err(|e| CliError::input(format!("{symbol}: {e}")))?;
                ctx.render(doc::SIC_SYMBOL, 2, SicSymbolData { values: s.iter().map(|&z| z.into()).collect() }, out)
            }
        },
        Command::Run { .. } => Err(CliError::input("`run` jobs cannot nest")),
    }
}
