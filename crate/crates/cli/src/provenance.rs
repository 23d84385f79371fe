//! Run configuration and version stamp embedded in every output.

use std::path::PathBuf;

use gelfand_core::Measure;
use serde::Serialize;

use crate::Format;

/// Version string of the form `0.1.0 (git-describe)`.
pub const VERSION: &str =
    concat!(env!("CARGO_PKG_VERSION"), " (", env!("GELFAND_LAB_GIT_DESCRIBE"), ")");

#[derive(Clone, Debug, Default, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nmax: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub measure: Vec<Measure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub k: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub format: Vec<Format>,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        RunConfig { command: command.to_string(), ..Default::default() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("run configuration serializes")
    }

    /// Two lines, each starting with `# `.
    pub fn header(&self) -> String {
        format!("# gelfand-lab {}\n# config {}\n", VERSION, self.to_json())
    }
}
