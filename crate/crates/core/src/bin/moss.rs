use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use moss::error::{Error, Result};
use moss::ir::{Bounds, LayeredSystem, Mode};
use moss::manifest;
use moss::pipeline::{self, header, Replacement, Report, RunConfig, Status};

#[derive(Parser)]
#[command(name = "moss", about = "Modular synthesis of layered implementations and specifications")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct Tuning {
    /// Value bounds, e.g. `int=0..10,depth=4`; overrides per-module bounds.
    #[arg(long)]
    bounds: Option<String>,
    /// Evaluation step budget per term.
    #[arg(long, default_value_t = moss::eval::DEFAULT_FUEL)]
    fuel: u64,
    /// Worker threads for candidate checking.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print the steps `run` would execute.
    Plan { file: PathBuf },
    /// Synthesize missing implementations and specifications, layer by layer.
    Run {
        file: PathBuf,
        #[arg(long, default_value = "moss-out")]
        out: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
        /// Execute lower layers' code instead of their specifications.
        #[arg(long)]
        monolithic: bool,
    },
    /// Check one layer's implementation and specifications.
    Check {
        file: PathBuf,
        #[arg(long)]
        layer: String,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Check a layer's IAS against a replacement implementation.
    Revalidate {
        file: PathBuf,
        #[arg(long)]
        layer: String,
        #[arg(long = "impl")]
        implementation: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Report what a layer's specification cannot derive from the layer below.
    Probe {
        file: PathBuf,
        #[arg(long)]
        layer: String,
        #[command(flatten)]
        tuning: Tuning,
    },
}

fn parse_bounds(s: &str) -> Result<Bounds> {
    let mut b = Bounds::default();
    let bad = || Error::Config(format!("bad bounds `{s}`; expected int=LO..HI,depth=D"));
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(bad)?;
        match k.trim() {
            "int" => {
                let (lo, hi) = v.split_once("..").ok_or_else(bad)?;
                b.int_lo = lo.trim().parse().map_err(|_| bad())?;
                b.int_hi = hi.trim().parse().map_err(|_| bad())?;
                if b.int_lo > b.int_hi {
                    return Err(bad());
                }
            }
            "depth" => b.depth = v.trim().parse().map_err(|_| bad())?,
            _ => return Err(bad()),
        }
    }
    Ok(b)
}

fn config(t: &Tuning, mode: Mode) -> Result<RunConfig> {
    Ok(RunConfig {
        bounds: t.bounds.as_deref().map(parse_bounds).transpose()?,
        fuel: t.fuel,
        jobs: t.jobs.max(1),
        mode,
        ..RunConfig::default()
    })
}

fn load(path: &Path) -> Result<LayeredSystem> {
    manifest::load_file(path)
}

fn layer(sys: &LayeredSystem, name: &str) -> Result<usize> {
    sys.layer_of(name)
}

/// Exit code 0 on success, 1 on a failed step or violation.
fn finish(report: &Report, ok: bool) -> Result<ExitCode> {
    print!("{report}");
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Plan { file } => {
            let sys = load(&file)?;
            let steps = pipeline::plan(&sys, Mode::Modular)?;
            let mut r = header("plan", &file);
            r.push("steps", steps.len());
            for (k, s) in steps.iter().enumerate() {
                r.push(format!("step.{}", k + 1), s);
            }
            finish(&r, true)
        }
        Command::Run { file, out, tuning, monolithic } => {
            let sys = load(&file)?;
            let cfg = config(&tuning, if monolithic { Mode::Monolithic } else { Mode::Modular })?;
            let outcome = pipeline::run_pipeline(sys, &cfg)?;
            let h = header("run", &file);
            let artifacts = pipeline::write_outputs(&outcome, &file, &out, &h)?;
            let mut r = h;
            r.lines.extend(outcome.report().lines);
            r.push("manifest", artifacts.manifest.display());
            r.push("report", artifacts.report.display());
            finish(&r, outcome.ok())
        }
        Command::Check { file, layer: name, tuning } => {
            let sys = load(&file)?;
            let i = layer(&sys, &name)?;
            let (status, counts) = pipeline::check_layer(&sys, i, &config(&tuning, Mode::Modular)?)?;
            let mut r = header("check", &file);
            r.push("module", &name);
            for (k, v) in counts {
                r.push(k, v);
            }
            let ok = status == Status::Ok;
            if let Status::Failed(why) = status {
                r.push("reason", why);
            }
            r.push("status", if ok { "ok" } else { "failed" });
            finish(&r, ok)
        }
        Command::Revalidate { file, layer: name, implementation, tuning } => {
            let sys = load(&file)?;
            let i = layer(&sys, &name)?;
            let text = std::fs::read_to_string(&implementation)?;
            let replacement = Replacement::parse(&text, &name)?;
            let started = std::time::Instant::now();
            let result = pipeline::revalidate(&sys, i, replacement, &config(&tuning, Mode::Modular)?)?;
            let mut r = header("revalidate", &file);
            r.push("impl", implementation.display());
            r.lines.extend(result.report().lines);
            r.push("time", format!("{:.3}s", started.elapsed().as_secs_f64()));
            finish(&r, result.ok())
        }
        Command::Probe { file, layer: name, tuning } => {
            let sys = load(&file)?;
            let i = layer(&sys, &name)?;
            let witnesses = pipeline::spec_gap_probe(&sys, i, &config(&tuning, Mode::Modular)?)?;
            let mut r = header("probe", &file);
            r.push("module", &name);
            r.push("witnesses", witnesses.len());
            for (k, w) in witnesses.iter().enumerate() {
                r.push(format!("witness.{}", k + 1), w);
            }
            r.push("status", if witnesses.is_empty() { "ok" } else { "failed" });
            finish(&r, witnesses.is_empty())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
