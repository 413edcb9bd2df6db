//! File formats. Every file is an envelope
//! `{schema, schema_version, tool_version, dimension, invocation, data}`;
//! complex numbers are `[re, im]`, matrices row-major, grids `[a][α]`.

use std::io::Read;

use mubtomo::sim::{MeasurementRecord, Repair};
use mubtomo::starprod::SymbolKind;
use mubtomo::{ComplexMatrix, MubSet, Tomogram};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const MUB_SET: &str = "mubtomo.mub_set";
pub const DENSITY_MATRIX: &str = "mubtomo.density_matrix";
pub const TOMOGRAM: &str = "mubtomo.tomogram";
pub const SIMULATION: &str = "mubtomo.simulation";
pub const VERIFICATION: &str = "mubtomo.verification";
pub const MUB_SYMBOL: &str = "mubtomo.mub_symbol";
pub const SIC_SYMBOL: &str = "mubtomo.sic_symbol";

pub const ALL_SCHEMAS: [&str; 7] = [MUB_SET, DENSITY_MATRIX, TOMOGRAM, SIMULATION, VERIFICATION, MUB_SYMBOL, SIC_SYMBOL];

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document<T> {
    pub schema: String,
    pub schema_version: u32,
    #[serde(default)]
    pub tool_version: Option<String>,
    pub dimension: usize,
    #[serde(default)]
    pub invocation: Vec<String>,
    pub data: T,
}

impl<T> Document<T> {
    pub fn new(schema: &str, dimension: usize, invocation: &[String], data: T) -> Self {
        Document {
            schema: schema.to_string(),
            schema_version: SCHEMA_VERSION,
            tool_version: Some(TOOL_VERSION.to_string()),
            dimension,
            invocation: invocation.to_vec(),
            data,
        }
    }
}

/// `[re, im]`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cx(pub f64, pub f64);

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Cx(z.re, z.im)
    }
}

impl From<Cx> for Complex64 {
    fn from(c: Cx) -> Self {
        Complex64::new(c.0, c.1)
    }
}

pub fn matrix_to_rows(m: &ComplexMatrix) -> Vec<Vec<Cx>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(Cx::from).collect()).collect()
}

pub fn rows_to_matrix(rows: &[Vec<Cx>]) -> Result<ComplexMatrix, CliError> {
    let rows: Vec<Vec<Complex64>> = rows.iter().map(|r| r.iter().map(|&c| c.into()).collect()).collect();
    Ok(ComplexMatrix::from_rows(&rows)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MubSetData {
    /// `bases[a][α][k] = ⟨k|aα⟩`
    pub bases: Vec<Vec<Vec<Cx>>>,
}

impl MubSetData {
    pub fn from_set(set: &MubSet) -> Self {
        MubSetData {
            bases: set.bases().into_iter().map(|b| b.into_iter().map(|v| v.into_iter().map(Cx::from).collect()).collect()).collect(),
        }
    }

    pub fn to_set(&self, dim: usize) -> Result<MubSet, CliError> {
        let bases = self.bases.iter().map(|b| b.iter().map(|v| v.iter().map(|&c| c.into()).collect()).collect()).collect();
        Ok(MubSet::from_bases(dim, bases)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReconstructionDiagnostics {
    pub min_eigenvalue: f64,
    pub is_positive: bool,
    pub normalization_defect: f64,
    pub normalization_warning: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityMatrixData {
    pub matrix: Vec<Vec<Cx>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<ReconstructionDiagnostics>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TomogramData {
    pub probabilities: Vec<Vec<f64>>,
}

impl TomogramData {
    pub fn from_tomogram(t: &Tomogram) -> Self {
        TomogramData { probabilities: t.rows() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimateData {
    pub repair: Repair,
    pub matrix: Vec<Vec<Cx>>,
    pub min_eigenvalue_before: f64,
    pub trace_distance_moved: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationData {
    pub record: MeasurementRecord,
    pub frequencies: Vec<Vec<f64>>,
    pub estimate: EstimateData,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MubSymbolData {
    pub kind: SymbolKind,
    /// `values[a][α]`
    pub values: Vec<Vec<Cx>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SicSymbolData {
    /// `values[k − 1]`, `k = 1..4`
    pub values: Vec<Cx>,
}

pub fn read_text(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::input(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

/// Parses an envelope of the expected schema.
pub fn read_document<T: DeserializeOwned>(path: &str, schema: &str) -> Result<Document<T>, CliError> {
    let text = read_text(path)?;
    let doc: Document<T> = serde_json::from_str(&text).map_err(|e| CliError::input(format!("{path}: {e}")))?;
    if doc.schema != schema {
        return Err(CliError::input(format!("{path}: expected schema {schema}, found {}", doc.schema)));
    }
    if doc.schema_version != SCHEMA_VERSION {
        return Err(CliError::input(format!(
            "{path}: unsupported schema version {} (this tool reads version {SCHEMA_VERSION})",
            doc.schema_version
        )));
    }
    if doc.dimension == 0 {
        return Err(CliError::input(format!("{path}: dimension must be positive")));
    }
    Ok(doc)
}

pub fn write_text(path: &str, text: &str) -> Result<(), CliError> {
    if path == "-" {
        use std::io::Write;
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::input(format!("writing stdout: {e}")))
    } else {
        std::fs::write(path, text).map_err(|e| CliError::input(format!("writing {path}: {e}")))
    }
}
