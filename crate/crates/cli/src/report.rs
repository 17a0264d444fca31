use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: PathBuf,
    pub sha256: String,
}

/// Envelope shared by every command.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: &'static str,
    pub inputs: Vec<InputDigest>,
    pub parameters: Value,
    pub results: Value,
    pub warnings: Vec<String>,
    pub seed: Option<u64>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            inputs: Vec::new(),
            parameters: Value::Null,
            results: Value::Null,
            warnings: Vec::new(),
            seed: None,
            passed: true,
        }
    }

    /// Reads and parses a JSON input, recording its digest.
    pub fn load<T: DeserializeOwned>(&mut self, path: &Path, what: &str) -> Result<T> {
        let bytes = fs::read(path).with_context(|| format!("reading {what} file {}", path.display()))?;
        self.inputs.push(InputDigest {
            path: path.to_path_buf(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        serde_json::from_slice(&bytes).with_context(|| format!("parsing {what} file {}", path.display()))
    }
}

/// Rounds to 12 significant digits, so reports are stable across
/// platforms that differ in the last bits.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn sig12_all(xs: &[f64]) -> Vec<f64> {
    xs.iter().map(|&x| sig12(x)).collect()
}
