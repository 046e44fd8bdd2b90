//! Kernel files, table output and run reports.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::configspace::{Configuration, ConfigurationFunction};
use crate::error::{Error, Result};
use crate::ground::{validate_model, GroundSpace, KernelModel, Statistics, DEFAULT_TOLERANCE};

/// On-disk kernel description:
/// `{"sites":[…],"sigma":[…],"matrix":[[…]…],"statistics":{"family":…,"l":…}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelFile {
    pub sites: Vec<String>,
    pub sigma: Vec<f64>,
    pub matrix: Vec<Vec<f64>>,
    pub statistics: Statistics,
}

impl KernelFile {
    pub fn from_model(model: &KernelModel) -> Self {
        let m = model.matrix();
        KernelFile {
            sites: model.ground().labels().to_vec(),
            sigma: model.ground().weights().to_vec(),
            matrix: (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect()).collect(),
            statistics: model.statistics(),
        }
    }

    pub fn to_model(&self, tol: f64) -> Result<KernelModel> {
        let n = self.matrix.len();
        if let Some(row) = self.matrix.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension(format!("kernel matrix row of length {} in a {n}-row matrix", row.len())));
        }
        let ground = GroundSpace::new(self.sites.clone(), self.sigma.clone())?;
        let matrix = DMatrix::from_fn(n, n, |r, c| self.matrix[r][c]);
        validate_model(ground, matrix, self.statistics, tol)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn read_kernel(path: &Path, tol: Option<f64>) -> Result<KernelModel> {
    let text = std::fs::read_to_string(path)?;
    KernelFile::parse(&text)?.to_model(tol.unwrap_or(DEFAULT_TOLERANCE))
}

pub fn write_kernel(path: &Path, model: &KernelModel) -> Result<()> {
    std::fs::write(path, KernelFile::from_model(model).to_json()? + "\n")?;
    Ok(())
}

/// Output format for tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// `configuration,value` lines; configurations print as space-separated
/// sites with repetition.
pub fn function_csv(f: &ConfigurationFunction, value_name: &str) -> String {
    let mut out = format!("configuration,{value_name}\n");
    for (eta, v) in f.iter() {
        let _ = writeln!(out, "{},{v:e}", configuration_cell(eta));
    }
    out
}

fn configuration_cell(eta: &Configuration) -> String {
    eta.expanded().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

/// Hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
}

impl CheckResult {
    /// Passes when `measured ≤ tolerance`.
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        CheckResult { name: name.into(), passed: measured <= tolerance, measured, tolerance }
    }

    /// Passes when `measured ≥ −tolerance`.
    pub fn at_least_minus(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        CheckResult { name: name.into(), passed: measured >= -tolerance, measured, tolerance }
    }
}

/// Machine-readable record of a command run. `wall_time_s` is the only
/// field that varies between identical runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub config_hash: String,
    pub seed: Option<u64>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn new(command: Vec<String>, inputs: &[u8], seed: Option<u64>, checks: Vec<CheckResult>, wall_time_s: f64) -> Self {
        let mut hashed = command.join("\u{1f}").into_bytes();
        hashed.push(0);
        hashed.extend_from_slice(inputs);
        let passed = checks.iter().all(|c| c.passed);
        RunReport { command, config_hash: sha256_hex(&hashed), seed, checks, passed, wall_time_s }
    }
}
