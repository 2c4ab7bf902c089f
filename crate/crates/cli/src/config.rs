//! Run configuration: parsing, validation and the semantic hash.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use qshuffle::cartan::CartanError;
use qshuffle::{CartanDatum, Regime, RootSystem, WeightSpec};

pub const TASKS: [&str; 10] = [
    "serre-dims",
    "coinvariants",
    "cohochschild",
    "bar-duality",
    "koszul-generic",
    "koszul-root-of-unity",
    "homotopy-check",
    "theorem-a",
    "theorem-b",
    "prop-sln",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CartanSpec {
    pub matrix: Vec<Vec<i64>>,
    pub d: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RegimeSpec {
    Generic,
    RootOfUnity { l: u32 },
}

fn default_pbw() -> u32 {
    4
}

fn default_p_max() -> u32 {
    3
}

/// The file format. Only type errors are caught here; everything else is
/// checked by [`RunConfig::validate`].
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub cartan: CartanSpec,
    pub lambda: Vec<i64>,
    pub regime: RegimeSpec,
    pub t_max: u32,
    pub n_max: u32,
    #[serde(default = "default_pbw")]
    pub pbw_degree_max: u32,
    #[serde(default = "default_p_max")]
    pub p_max: u32,
    #[serde(default)]
    pub w0_word: Option<Vec<usize>>,
    #[serde(default)]
    pub tasks: Vec<String>,
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
    #[serde(default)]
    pub jobs: Option<usize>,
}

/// Fields that determine the report. Everything here feeds the config hash.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Semantic {
    pub cartan: CartanSpec,
    pub lambda: Vec<i64>,
    pub regime: RegimeSpec,
    pub t_max: u32,
    pub n_max: u32,
    pub pbw_degree_max: u32,
    pub p_max: u32,
    pub w0_word: Option<Vec<usize>>,
    pub tasks: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub semantic: Semantic,
    pub datum: CartanDatum,
    pub lambda: WeightSpec,
    pub regime: Regime,
    pub roots: RootSystem,
    pub cache_dir: Option<PathBuf>,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigErrors(pub Vec<String>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "invalid configuration ({} problem(s)):", self.0.len())?;
        for e in &self.0 {
            writeln!(f, "  - {e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub t_max: Option<u32>,
    pub n_max: Option<u32>,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

pub fn parse_config(path: &Path, o: &Overrides) -> Result<RunConfig, ConfigErrors> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigErrors(vec![format!("cannot read {}: {e}", path.display())]))?;
    parse_config_str(&text, o)
}

pub fn parse_config_str(text: &str, o: &Overrides) -> Result<RunConfig, ConfigErrors> {
    let mut raw: RawConfig = serde_json::from_str(text).map_err(|e| ConfigErrors(vec![format!("malformed config: {e}")]))?;
    if let Some(t) = o.t_max {
        raw.t_max = t;
    }
    if let Some(n) = o.n_max {
        raw.n_max = n;
    }
    if o.jobs.is_some() {
        raw.jobs = o.jobs;
    }
    if o.cache_dir.is_some() {
        raw.cache_dir = o.cache_dir.clone();
    }
    RunConfig::validate(raw)
}

impl RunConfig {
    /// Checks every field independently and reports all violations together.
    pub fn validate(raw: RawConfig) -> Result<RunConfig, ConfigErrors> {
        let mut errs = Vec::new();
        let datum = CartanDatum::new(raw.cartan.matrix.clone(), raw.cartan.d.clone())
            .map_err(|e| errs.push(format!("cartan: {e}")))
            .ok();

        let rank = raw.cartan.matrix.len();
        if raw.lambda.len() != rank {
            errs.push(format!("lambda: expected {rank} coordinates, got {}", raw.lambda.len()));
        }
        let negative: Vec<usize> = (0..raw.lambda.len()).filter(|&i| raw.lambda[i] < 0).collect();
        if !negative.is_empty() {
            errs.push(format!(
                "lambda: {:?} is not dominant (coordinates {negative:?} are negative)",
                raw.lambda
            ));
        }

        let regime = match raw.regime {
            RegimeSpec::Generic => Some(Regime::Generic),
            RegimeSpec::RootOfUnity { l } => match Regime::root_of_unity(l) {
                Ok(r) => Some(r),
                Err(_) => {
                    errs.push(format!("regime: root_of_unity needs an odd order l >= 3, got l = {l}"));
                    None
                }
            },
        };

        let lambda = datum.as_ref().and_then(|d| WeightSpec::new(d, raw.lambda.clone()).ok());
        if let (Some(d), Some(w), Some(Regime::RootOfUnity { l })) = (&datum, &lambda, regime) {
            if let Err(e) = w.check_root_of_unity(d, l) {
                errs.push(format!("lambda: {e}"));
            }
        }

        let roots = datum.as_ref().and_then(|d| match RootSystem::new(d, raw.w0_word.as_deref()) {
            Ok(rs) => Some(rs),
            Err(e @ CartanError::BadWord { .. }) => {
                errs.push(format!("w0_word: {e}"));
                None
            }
            Err(e) => {
                errs.push(format!("cartan: {e}"));
                None
            }
        });

        if raw.t_max > 12 {
            errs.push(format!("t_max: {} is beyond desk scale (at most 12)", raw.t_max));
        }
        if raw.n_max > 6 {
            errs.push(format!("n_max: {} is beyond desk scale (at most 6)", raw.n_max));
        }
        if raw.pbw_degree_max > 12 {
            errs.push(format!("pbw_degree_max: {} is beyond desk scale (at most 12)", raw.pbw_degree_max));
        }
        for t in &raw.tasks {
            if !TASKS.contains(&t.as_str()) {
                errs.push(format!("tasks: unknown task {t:?} (known: {})", TASKS.join(", ")));
            }
        }
        if raw.jobs == Some(0) {
            errs.push("jobs: must be at least 1".into());
        }

        if !errs.is_empty() {
            return Err(ConfigErrors(errs));
        }
        Ok(RunConfig {
            semantic: Semantic {
                cartan: raw.cartan,
                lambda: raw.lambda,
                regime: raw.regime,
                t_max: raw.t_max,
                n_max: raw.n_max,
                pbw_degree_max: raw.pbw_degree_max,
                p_max: raw.p_max,
                w0_word: raw.w0_word,
                tasks: raw.tasks,
            },
            datum: datum.unwrap(),
            lambda: lambda.unwrap(),
            regime: regime.unwrap(),
            roots: roots.unwrap(),
            cache_dir: raw.cache_dir,
            jobs: raw.jobs.unwrap_or(1),
        })
    }

    /// SHA-256 of the canonical JSON of the semantic fields.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(&self.semantic).expect("config serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}
