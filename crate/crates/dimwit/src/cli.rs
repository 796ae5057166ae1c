//! Command-line front end.
//!
//! Subcommands: `bounds`, `optimize`, `simulate`, `certify`, `report`, and
//! `settings export`. Exit codes are part of the interface:
//!
//! * 0 — success (for `certify`: at least one bound violated)
//! * 1 — unknown witness/experiment or unparseable input
//! * 2 — classical enumeration exceeds the guard limit
//! * 3 — I/O failure
//! * 4 — `certify` found no violation

use crate::classical::{classical_bound_with_limit, DEFAULT_GUARD_LIMIT};
use crate::error::{Error, Result};
use crate::certify::{certify_with_bounds, load_counts_with};
use crate::quantum::{optimize, refine, QuantumStrategy, SeesawConfig};
use crate::report::{render_csv, render_svg, ReportRow};
use crate::settings::{experiment, ExperimentSpec};
use crate::simulate::{estimate, simulate_counts, CountsFile, RawRecord, RunConfig};
use crate::witness::{algebraic_max, catalog, BoundTable, Model, Witness};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "dimwit",
    version,
    about = "Device-independent dimension witnesses: bounds, optimization, simulation, certification"
)]
struct Cli {
    /// Emit machine-readable JSON instead of human output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for all randomized operations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Classical,
    Quantum,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a classical (exact) or quantum (see-saw lower) bound.
    Bounds {
        /// Witness name (i3, i4) or path to a witness JSON file.
        #[arg(long)]
        witness: String,
        #[arg(long, value_enum)]
        model: ModelArg,
        /// System dimension d.
        #[arg(long)]
        dim: usize,
        /// Cap on the classical enumeration size.
        #[arg(long, default_value_t = DEFAULT_GUARD_LIMIT)]
        guard_limit: u128,
        #[command(flatten)]
        seesaw: SeesawArgs,
        /// Write the maximizing strategy as JSON.
        #[arg(long)]
        strategy_out: Option<PathBuf>,
    },
    /// Maximize a witness over d-dimensional quantum strategies by see-saw.
    Optimize {
        /// Witness name (i3, i4) or path to a witness JSON file.
        #[arg(long)]
        witness: String,
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        seesaw: SeesawArgs,
        /// Warm-start restart 0 from a strategy JSON file.
        #[arg(long)]
        init: Option<PathBuf>,
        /// Write the best strategy as JSON.
        #[arg(long)]
        strategy_out: Option<PathBuf>,
    },
    /// Run a simulated photon-counting experiment.
    Simulate {
        /// Experiment id (see `settings export --list`).
        #[arg(long)]
        experiment: String,
        /// Detected photons per second.
        #[arg(long, default_value_t = 2e4)]
        rate: f64,
        /// Seconds per setting.
        #[arg(long, default_value_t = 30.0)]
        duration: f64,
        /// Write the counts file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify minimum dimensions from a counts file.
    Certify {
        counts: PathBuf,
        /// Confidence in sigmas: a bound is violated when value - k*sigma
        /// exceeds it.
        #[arg(short, long, default_value_t = 3.0)]
        k: f64,
        /// Sum duplicate (x,y) records instead of rejecting them.
        #[arg(long)]
        merge: bool,
        /// Witness JSON for non-catalog witnesses.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Bound-table JSON for non-catalog witnesses.
        #[arg(long)]
        bounds: Option<PathBuf>,
    },
    /// Render estimate files as an SVG bar chart plus CSV.
    Report {
        /// Counts/estimate files produced by `simulate --out`.
        #[arg(required = true)]
        estimates: Vec<PathBuf>,
        #[arg(long)]
        out_svg: PathBuf,
        #[arg(long)]
        out_csv: PathBuf,
    },
    /// Inspect the built-in experiment catalog.
    Settings {
        #[command(subcommand)]
        command: SettingsCommand,
    },
}

#[derive(Args)]
struct SeesawArgs {
    #[arg(long, default_value_t = 64)]
    restarts: u32,
    #[arg(long, default_value_t = 500)]
    max_iters: u32,
    #[arg(long, default_value_t = 1e-10)]
    conv_tol: f64,
}

#[derive(Subcommand)]
enum SettingsCommand {
    /// Emit a catalog experiment's strategy as JSON.
    Export {
        /// Experiment id, e.g. i4-bb84.
        #[arg(long)]
        id: String,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// List the available ids instead.
        #[arg(long)]
        list: bool,
    },
}

/// Runs the CLI and returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } => 2,
        Error::Io(_) => 3,
        _ => 1,
    }
}

/// Formats with six significant digits for human output.
fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn load_witness(name_or_path: &str) -> Result<Witness> {
    if let Ok((w, _)) = catalog(name_or_path) {
        return Ok(w);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        return Err(Error::NotFound(format!(
            "witness '{name_or_path}' is not in the catalog and no such file exists"
        )));
    }
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{name_or_path}: {e}")))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Bounds { witness, model, dim, guard_limit, seesaw, strategy_out } => {
            let w = load_witness(witness)?;
            match model {
                ModelArg::Classical => {
                    let (value, strategy) = classical_bound_with_limit(&w, *dim, *guard_limit)?;
                    if let Some(path) = strategy_out {
                        write_text(path, &serde_json::to_string_pretty(&strategy)?)?;
                    }
                    if cli.json {
                        println!(
                            "{}",
                            json!({
                                "witness": w.name(),
                                "model": "classical",
                                "dim": dim,
                                "value": value,
                                "exact": true,
                            })
                        );
                    } else {
                        println!("{}", sig6(value));
                    }
                }
                ModelArg::Quantum => {
                    let cfg = SeesawConfig {
                        restarts: seesaw.restarts,
                        max_iters: seesaw.max_iters,
                        conv_tol: seesaw.conv_tol,
                        seed: cli.seed,
                        ..Default::default()
                    };
                    let result = optimize(&w, *dim, &cfg)?;
                    if let Some(path) = strategy_out {
                        write_text(path, &serde_json::to_string_pretty(&result.best_strategy)?)?;
                    }
                    if cli.json {
                        println!(
                            "{}",
                            json!({
                                "witness": w.name(),
                                "model": "quantum",
                                "dim": dim,
                                "value": result.best_value,
                                "exact": false,
                                "restarts": cfg.restarts,
                                "per_restart_values": result.per_restart_values,
                                "iterations_used": result.iterations_used,
                            })
                        );
                    } else {
                        println!("{}", sig6(result.best_value));
                        let hits = result
                            .per_restart_values
                            .iter()
                            .filter(|v| **v > result.best_value - 1e-9)
                            .count();
                        eprintln!(
                            "see-saw lower bound; {hits}/{} restarts reached it (seed {})",
                            cfg.restarts, cli.seed
                        );
                    }
                }
            }
            Ok(0)
        }

        Command::Optimize { witness, dim, seesaw, init, strategy_out } => {
            let w = load_witness(witness)?;
            let cfg = SeesawConfig {
                restarts: seesaw.restarts,
                max_iters: seesaw.max_iters,
                conv_tol: seesaw.conv_tol,
                seed: cli.seed,
                ..Default::default()
            };
            let mut result = optimize(&w, *dim, &cfg)?;
            if let Some(path) = init {
                let text = std::fs::read_to_string(path)?;
                let strategy: QuantumStrategy = serde_json::from_str(&text)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let (value, refined, iters) = refine(&w, &strategy, &cfg)?;
                if value > result.best_value {
                    result.best_value = value;
                    result.best_strategy = refined;
                }
                result.per_restart_values.insert(0, value);
                result.iterations_used.insert(0, iters);
            }
            if let Some(path) = strategy_out {
                write_text(path, &serde_json::to_string_pretty(&result.best_strategy)?)?;
            }
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "witness": w.name(),
                        "dim": dim,
                        "best_value": result.best_value,
                        "algebraic_max": algebraic_max(&w),
                        "per_restart_values": result.per_restart_values,
                        "iterations_used": result.iterations_used,
                        "strategy": result.best_strategy,
                    })
                );
            } else {
                println!("best value: {}", sig6(result.best_value));
                println!("algebraic max: {}", sig6(algebraic_max(&w)));
                let iters: u32 = result.iterations_used.iter().sum();
                println!(
                    "restarts: {} (total sweeps {iters}, seed {})",
                    result.per_restart_values.len(),
                    cli.seed
                );
            }
            Ok(0)
        }

        Command::Simulate { experiment: id, rate, duration, out } => {
            let spec = experiment(id)?;
            let cfg = RunConfig { rate: *rate, duration: *duration, seed: cli.seed };
            let counts = simulate_counts(&spec, &cfg)?;
            let w = spec.witness()?;
            let est = estimate(&w, &counts)?;
            if let Some(path) = out {
                let file = CountsFile {
                    witness: spec.witness_name.clone(),
                    records: est.counts.iter().map(RawRecord::from).collect(),
                    experiment: Some(spec.id.clone()),
                    value: Some(est.value),
                    sigma: Some(est.sigma),
                    theory: Some(spec.expected_value),
                };
                write_text(path, &serde_json::to_string_pretty(&file)?)?;
            }
            let degenerate = est.degenerate_settings();
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "experiment": spec.id,
                        "witness": spec.witness_name,
                        "value": est.value,
                        "sigma": est.sigma,
                        "theory": spec.expected_value,
                        "degenerate_variance_settings": degenerate,
                        "rate": rate,
                        "duration": duration,
                        "seed": cli.seed,
                    })
                );
            } else {
                println!("{} = {} +- {}", spec.id, sig6(est.value), sig6(est.sigma));
                println!("theory: {}", sig6(spec.expected_value));
                if !degenerate.is_empty() {
                    eprintln!(
                        "warning: degenerate variance on settings {degenerate:?}; \
                         their error contribution is underestimated"
                    );
                }
            }
            Ok(0)
        }

        Command::Certify { counts, k, merge, witness, bounds } => {
            let (name, records) = load_counts_with(counts, *merge)?;
            let (w, bound_table) = match (witness, bounds) {
                (Some(wpath), Some(bpath)) => {
                    let w: Witness = serde_json::from_str(&std::fs::read_to_string(wpath)?)
                        .map_err(|e| Error::Parse(format!("{}: {e}", wpath.display())))?;
                    let b: BoundTable = serde_json::from_str(&std::fs::read_to_string(bpath)?)
                        .map_err(|e| Error::Parse(format!("{}: {e}", bpath.display())))?;
                    (w, b)
                }
                (None, None) => catalog(&name)?,
                _ => {
                    return Err(Error::InvariantViolation(
                        "--witness and --bounds must be given together".into(),
                    ))
                }
            };
            let est = estimate(&w, &records)?;
            let cert = certify_with_bounds(&w, &bound_table, &est, *k)?;
            if let Some(warning) = &cert.data_sanity_warning {
                eprintln!("warning: {warning}");
            }
            println!("{}", serde_json::to_string_pretty(&cert)?);
            Ok(if cert.is_nontrivial() { 0 } else { 4 })
        }

        Command::Report { estimates, out_svg, out_csv } => {
            let mut groups: Vec<(String, Vec<ReportRow>)> = Vec::new();
            for path in estimates {
                let text = std::fs::read_to_string(path)?;
                let file: CountsFile = serde_json::from_str(&text)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let (w, _) = catalog(&file.witness).map_err(|_| {
                    Error::NotFound(format!(
                        "{}: witness '{}' has no catalog bounds to chart",
                        path.display(),
                        file.witness
                    ))
                })?;
                let label = file.experiment.clone().unwrap_or_else(|| {
                    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
                });
                let (value, sigma) = match (file.value, file.sigma) {
                    (Some(v), Some(s)) => (v, s),
                    _ => {
                        let records = file
                            .records
                            .iter()
                            .map(RawRecord::validate)
                            .collect::<Result<Vec<_>>>()?;
                        let est = estimate(&w, &records)?;
                        (est.value, est.sigma)
                    }
                };
                let theory = file
                    .theory
                    .or_else(|| {
                        file.experiment
                            .as_deref()
                            .and_then(|id| experiment(id).ok())
                            .map(|spec| spec.expected_value)
                    })
                    .unwrap_or(f64::NAN);
                let row = ReportRow { label, value, sigma, theory };
                match groups.iter_mut().find(|(name, _)| *name == file.witness) {
                    Some((_, rows)) => rows.push(row),
                    None => groups.push((file.witness.clone(), vec![row])),
                }
            }
            write_text(out_svg, &render_svg(&groups)?)?;
            write_text(out_csv, &render_csv(&groups))?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "svg": out_svg.display().to_string(),
                        "csv": out_csv.display().to_string(),
                        "rows": groups.iter().map(|(_, r)| r.len()).sum::<usize>(),
                    })
                );
            } else {
                println!("wrote {} and {}", out_svg.display(), out_csv.display());
            }
            Ok(0)
        }

        Command::Settings { command: SettingsCommand::Export { id, out, list } } => {
            if *list {
                for id in crate::settings::experiment_ids() {
                    println!("{id}");
                }
                return Ok(0);
            }
            let spec = experiment(id)?;
            let strategy = spec.as_quantum()?;
            let payload = export_payload(&spec, &strategy)?;
            let text = serde_json::to_string_pretty(&payload)?;
            match out {
                Some(path) => write_text(path, &text)?,
                None => println!("{text}"),
            }
            Ok(0)
        }
    }
}

fn export_payload(spec: &ExperimentSpec, strategy: &QuantumStrategy) -> Result<serde_json::Value> {
    let model = match spec.model {
        Model::Classical => "classical",
        Model::Quantum => "quantum",
    };
    let mut value = serde_json::to_value(strategy)?;
    let obj = value.as_object_mut().expect("strategy serializes as an object");
    obj.insert("experiment".into(), json!(spec.id));
    obj.insert("witness".into(), json!(spec.witness_name));
    obj.insert("model".into(), json!(model));
    obj.insert("expected_value".into(), json!(spec.expected_value));
    Ok(value)
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
