use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Summary of one command, written with `--report`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub config: ReportConfig,
    /// Milliseconds per product phase; empty when no BD product ran.
    pub phase_ms: Vec<f64>,
    pub wall_ms: f64,
    pub fallbacks: usize,
    pub checksum: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub w: Option<i64>,
    pub delta: Option<usize>,
    pub rho: Option<usize>,
    pub mode: String,
    pub seed: u64,
}

/// One row of `bench` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub w: i64,
    pub delta: usize,
    pub rho: usize,
    pub mode: String,
    pub naive_ms: f64,
    pub bd_ms: f64,
    pub checksum: String,
    /// `None` above the verification size limit.
    pub verified: Option<bool>,
}

pub fn checksum(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}
