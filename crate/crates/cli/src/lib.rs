//! Orchestration for the `qsh` command: configuration, tasks, reports and the
//! on-disk basis cache.

pub mod cache;
pub mod config;
pub mod report;
pub mod tasks;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use qshuffle::bimodule::BasisStore;
use qshuffle::{AtRootOfUnity, Generic, QField, Regime};

use cache::FileCache;
use config::RunConfig;
use report::{Report, TaskOutput, TaskReport};

/// Expands `all` to the configured task list; anything else runs alone.
pub fn selected_tasks(cfg: &RunConfig, which: &str) -> Vec<String> {
    if which == "all" {
        cfg.semantic.tasks.clone()
    } else {
        vec![which.to_string()]
    }
}

/// Runs the tasks in order on a pool of `cfg.jobs` threads.
pub fn run(cfg: &RunConfig, tasks: &[String]) -> Result<Report, String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| e.to_string())?;
    pool.install(|| match cfg.regime {
        Regime::Generic => run_in::<Generic>(cfg, tasks),
        Regime::RootOfUnity { .. } => run_in::<AtRootOfUnity>(cfg, tasks),
    })
}

fn run_in<F: QField>(cfg: &RunConfig, tasks: &[String]) -> Result<Report, String> {
    let mut store = BasisStore::<F>::new(&cfg.datum, Some(&cfg.lambda), cfg.regime).map_err(|e| e.to_string())?;
    let cache = match &cfg.cache_dir {
        Some(dir) => {
            let c = Arc::new(FileCache::new(dir, &cfg.datum, &cfg.lambda, cfg.regime).map_err(|e| format!("cache dir {}: {e}", dir.display()))?);
            store = store.with_cache(c.clone());
            Some(c)
        }
        None => None,
    };
    let mut reports = Vec::new();
    for name in tasks {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| tasks::run_task(name, cfg, &store)))
            .unwrap_or_else(|p| Err(format!("task panicked: {}", panic_message(&p))));
        let r = match result {
            Ok(output) => TaskReport {
                task: name.clone(),
                status: "ok",
                error: None,
                output,
            },
            Err(e) => TaskReport {
                task: name.clone(),
                status: "error",
                error: Some(e),
                output: TaskOutput::default(),
            },
        };
        let failed = r.output.verdicts.iter().filter(|v| !v.pass).count();
        eprintln!(
            "{name}: {} in {:.2}s ({} verdicts, {failed} failed)",
            r.status,
            start.elapsed().as_secs_f64(),
            r.output.verdicts.len()
        );
        for w in &r.output.warnings {
            eprintln!("warning: {name}: {w}");
        }
        reports.push(r);
    }
    if let Some(c) = cache {
        use std::sync::atomic::Ordering::Relaxed;
        eprintln!(
            "cache: {} hits, {} misses, {} invalid",
            c.hits.load(Relaxed),
            c.misses.load(Relaxed),
            c.invalid.load(Relaxed)
        );
    }
    Ok(Report::new(cfg.hash(), cfg.semantic.clone(), reports))
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".into()
    }
}
