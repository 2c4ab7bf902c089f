//! Report layout. All maps are ordered so the serialized form is stable.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;
use serde_json::{json, Value};

use qshuffle::homology::HomologyReport;

use crate::config::Semantic;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub computed: Value,
    pub oracle: Value,
    pub oracle_source: String,
}

impl Verdict {
    pub fn compare<T: Serialize + PartialEq>(name: &str, computed: T, oracle: T, source: &str) -> Self {
        Verdict {
            name: name.to_string(),
            pass: computed == oracle,
            computed: json!(computed),
            oracle: json!(oracle),
            oracle_source: source.to_string(),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct TaskOutput {
    pub tables: BTreeMap<String, Value>,
    pub verdicts: Vec<Verdict>,
    pub warnings: Vec<String>,
    /// Blocks whose homology is only known below the requested degree.
    pub incomplete: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TaskReport {
    pub task: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(flatten)]
    pub output: TaskOutput,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub tasks: usize,
    pub errors: usize,
    pub verdicts: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub config_sha256: String,
    pub config: Semantic,
    pub tasks: Vec<TaskReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config_sha256: String, config: Semantic, tasks: Vec<TaskReport>) -> Self {
        let verdicts: Vec<&Verdict> = tasks.iter().flat_map(|t| &t.output.verdicts).collect();
        let passed = verdicts.iter().filter(|v| v.pass).count();
        let errors = tasks.iter().filter(|t| t.error.is_some()).count();
        let summary = Summary {
            tasks: tasks.len(),
            errors,
            verdicts: verdicts.len(),
            passed,
            failed: verdicts.len() - passed,
            all_pass: errors == 0 && passed == verdicts.len(),
        };
        Report {
            schema_version: SCHEMA_VERSION,
            tool: format!("qsh {}", env!("CARGO_PKG_VERSION")),
            config_sha256,
            config,
            tasks,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// `{ "n": { "key": dim } }` from a homology report.
pub fn dims_table<K: Ord + Clone + Display>(h: &HomologyReport<K>) -> Value {
    let mut out: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    for ((n, k), d) in &h.dims {
        out.entry(n.to_string()).or_default().insert(k.to_string(), *d);
    }
    json!(out)
}

/// Per-degree totals `[H_0, H_1, ...]` up to `n_max`.
pub fn totals<K: Ord + Clone>(h: &HomologyReport<K>, n_max: usize) -> Vec<usize> {
    (0..=n_max).map(|n| h.total(n)).collect()
}

pub fn incomplete<K: Ord + Display>(h: &HomologyReport<K>) -> BTreeMap<String, usize> {
    h.incomplete.iter().map(|(k, n)| (k.to_string(), *n)).collect()
}
