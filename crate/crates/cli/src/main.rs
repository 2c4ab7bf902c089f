use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use qsh::config::{parse_config, Overrides, TASKS};

#[derive(Debug, Parser)]
#[command(name = "qsh", version, about = "Exact homology of quantum shuffle algebras: verification runs")]
struct Cli {
    /// A task name, or `all` for the tasks listed in the config.
    task: String,

    #[arg(long)]
    config: PathBuf,

    /// Where to write the JSON report.
    #[arg(long)]
    out: PathBuf,

    /// Override the config's t_max.
    #[arg(long)]
    tmax: Option<u32>,

    /// Override the config's n_max.
    #[arg(long)]
    nmax: Option<u32>,

    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,

    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.task != "all" && !TASKS.contains(&cli.task.as_str()) {
        eprintln!("error: unknown task {:?}; expected `all` or one of: {}", cli.task, TASKS.join(", "));
        return ExitCode::from(2);
    }
    let overrides = Overrides {
        t_max: cli.tmax,
        n_max: cli.nmax,
        jobs: cli.jobs,
        cache_dir: cli.cache_dir,
    };
    let cfg = match parse_config(&cli.config, &overrides) {
        Ok(c) => c,
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(2);
        }
    };
    let tasks = qsh::selected_tasks(&cfg, &cli.task);
    let report = match qsh::run(&cfg, &tasks) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = std::fs::write(&cli.out, report.to_json()) {
        eprintln!("error: cannot write {}: {e}", cli.out.display());
        return ExitCode::from(2);
    }
    let s = &report.summary;
    eprintln!("{} of {} verdicts passed, {} task error(s)", s.passed, s.verdicts, s.errors);
    if s.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
