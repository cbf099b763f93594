//! Run configuration, errors with exit codes, and the JSON report.

use std::fmt;
use std::path::PathBuf;

use sandpile_core::torsor::Variant;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "sandpile-report/1";

#[derive(Debug)]
pub enum CliError {
    /// Malformed files, unknown ids, unsupported input.
    Input(String),
    /// A computation contradicted a property that should always hold.
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violated: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<sandpile_core::Error> for CliError {
    fn from(e: sandpile_core::Error) -> Self {
        if e.is_invariant_violation() {
            CliError::Invariant(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Pairs {
    /// Chip and sink joined by an edge.
    Adjacent,
    /// Every ordered pair of distinct vertices.
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    pub max_edges: usize,
    pub max_elements: usize,
    pub telescope_n: usize,
    pub telescope_k: usize,
    pub variants: Vec<Variant>,
    pub pairs: Pairs,
    pub include_nonplanar: bool,
    pub trace: bool,
    pub report: Option<PathBuf>,
    /// Zero lets the pool pick.
    pub workers: usize,
    pub seed: u64,
    /// Check a seeded random subset of this many instances.
    pub sample: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_edges: 5,
            max_elements: 9,
            telescope_n: 2,
            telescope_k: 2,
            variants: vec![Variant::R],
            pairs: Pairs::Adjacent,
            include_nonplanar: false,
            trace: false,
            report: None,
            workers: 0,
            seed: 0,
            sample: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.max_edges == 0 || self.max_elements == 0 || self.telescope_k == 0 {
            return Err(CliError::Input("bounds must be positive".into()));
        }
        if self.variants.is_empty() {
            return Err(CliError::Input("no variants selected".into()));
        }
        if self.sample == Some(0) {
            return Err(CliError::Input("sample size must be positive".into()));
        }
        Ok(())
    }
}

/// The result of checking one instance.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub checks: usize,
    pub skipped: Option<String>,
    pub violations: Vec<Value>,
    pub findings: Vec<Value>,
    pub data: Option<Value>,
}

impl Outcome {
    pub fn skipped(reason: impl Into<String>) -> Self {
        Outcome {
            skipped: Some(reason.into()),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub instance: String,
    pub detail: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: usize,
    pub violations: usize,
    pub findings: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema: String,
    pub tool: String,
    pub suite: String,
    /// Whether violations count as failures; conjecture sweeps only record findings.
    pub asserted: bool,
    pub config: RunConfig,
    pub counts: Counts,
    pub violations: Vec<Entry>,
    pub findings: Vec<Entry>,
    pub skipped: Vec<Entry>,
    pub details: Vec<Entry>,
    /// Instance keys, listed only for sampled runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampled: Option<Vec<String>>,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn new(suite: &str, asserted: bool, config: &RunConfig) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            tool: concat!("sandpile ", env!("CARGO_PKG_VERSION")).to_string(),
            suite: suite.to_string(),
            asserted,
            config: config.clone(),
            counts: Counts::default(),
            violations: Vec::new(),
            findings: Vec::new(),
            skipped: Vec::new(),
            details: Vec::new(),
            sampled: None,
            wall_time_ms: 0,
        }
    }

    pub fn add(&mut self, instance: &str, o: Outcome) {
        let entry = |detail| Entry {
            instance: instance.to_string(),
            detail,
        };
        self.counts.instances += 1;
        self.counts.checks += o.checks;
        if let Some(reason) = o.skipped {
            self.counts.skipped += 1;
            self.skipped.push(entry(Value::String(reason)));
            return;
        }
        if o.violations.is_empty() {
            self.counts.passed += 1;
        } else {
            self.counts.failed += 1;
        }
        self.counts.violations += o.violations.len();
        self.counts.findings += o.findings.len();
        self.violations.extend(o.violations.into_iter().map(entry));
        self.findings.extend(o.findings.into_iter().map(entry));
        if let Some(d) = o.data {
            self.details.push(entry(d));
        }
    }

    pub fn passed(&self) -> bool {
        !self.asserted || self.violations.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            3
        }
    }

    /// Checks the fields a consumer relies on.
    pub fn validate_json(v: &Value) -> Result<(), String> {
        let obj = v.as_object().ok_or("report is not an object")?;
        if obj.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
            return Err("wrong schema".into());
        }
        for key in ["tool", "suite"] {
            obj.get(key).and_then(Value::as_str).ok_or(format!("missing {key}"))?;
        }
        obj.get("asserted").and_then(Value::as_bool).ok_or("missing asserted")?;
        obj.get("wallTimeMs")
            .and_then(Value::as_u64)
            .ok_or("missing wallTimeMs")?;
        let counts = obj.get("counts").and_then(Value::as_object).ok_or("missing counts")?;
        for key in [
            "instances",
            "passed",
            "failed",
            "skipped",
            "checks",
            "violations",
            "findings",
        ] {
            counts
                .get(key)
                .and_then(Value::as_u64)
                .ok_or(format!("missing counts.{key}"))?;
        }
        for key in ["violations", "findings", "skipped", "details"] {
            let list = obj.get(key).and_then(Value::as_array).ok_or(format!("missing {key}"))?;
            for e in list {
                e.get("instance")
                    .and_then(Value::as_str)
                    .ok_or(format!("{key} entry without instance"))?;
                e.get("detail").ok_or(format!("{key} entry without detail"))?;
            }
        }
        let c = |k: &str| counts[k].as_u64().unwrap_or(0);
        if c("passed") + c("failed") + c("skipped") != c("instances") {
            return Err("instance counts do not add up".into());
        }
        serde_json::from_value::<RunConfig>(obj.get("config").cloned().ok_or("missing config")?)
            .map_err(|e| format!("bad config: {e}"))?;
        Ok(())
    }
}
