//! Configuration-driven experiment runner: builds kernel/detector pipelines
//! from scenario files, executes sweeps and thermality checks, and emits
//! deterministic columnar results plus a verdict report.

mod config;
mod plotdata;
mod runner;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Bundled scenarios, resolvable by bare name in `run`/`check`.
const BUNDLED: &[(&str, &str)] = &[
    (
        "unruh_benchmark",
        include_str!("../scenarios/unruh_benchmark.toml"),
    ),
    (
        "thermal_inertial",
        include_str!("../scenarios/thermal_inertial.toml"),
    ),
    (
        "smeared_dipole_study",
        include_str!("../scenarios/smeared_dipole_study.toml"),
    ),
    (
        "nonhermitian_operator",
        include_str!("../scenarios/nonhermitian_operator.toml"),
    ),
];

#[derive(Parser)]
#[command(
    name = "wightman",
    about = "Detector response and KMS thermometry experiment runner",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario file (or bundled scenario name) and write results.
    Run {
        /// Path to a scenario TOML file, or a bundled scenario name.
        scenario: String,
        /// Output directory (defaults to the scenario's output.directory,
        /// then "results").
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for sweep points.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Comma-separated threshold overrides, e.g.
        /// `balance=1e-3,anti_periodicity=1e-8,bounds=1e-2`.
        #[arg(long, default_value = "")]
        tolerance_overrides: String,
    },
    /// Validate a scenario file without running anything.
    Check { scenario: String },
    /// List the kernel catalog and the accepted scenario selectors.
    ListKernels,
    /// Re-shape results into two/three-column plot series on stdout.
    Plotdata {
        results_dir: PathBuf,
        #[arg(long)]
        kind: String,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_scenario(spec: &str) -> Result<String, String> {
    let path = PathBuf::from(spec);
    if path.exists() {
        return std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()));
    }
    for (name, text) in BUNDLED {
        if *name == spec {
            return Ok((*text).to_string());
        }
    }
    Err(format!(
        "scenario {spec:?} is neither a readable file nor a bundled name ({})",
        BUNDLED
            .iter()
            .map(|(n, _)| *n)
            .collect::<Vec<_>>()
            .join(", ")
    ))
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes (e.g. `| head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            scenario,
            out,
            workers,
            tolerance_overrides,
        } => {
            let text = match load_scenario(&scenario) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let tol = match runner::Tolerances::parse_overrides(&tolerance_overrides) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let cfg = match config::parse_config(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let exp = match config::build_experiment(&cfg) {
                Ok(x) => x,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let out = out
                .or_else(|| exp.config.output.directory.as_ref().map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("results"));
            let output = runner::run_scenario(&exp, &text, &tol, workers);
            if let Err(e) = runner::write_output(&output, &out) {
                eprintln!("error: cannot write results: {e}");
                return ExitCode::from(2);
            }
            for line in &output.verdict_lines {
                println!("{line}");
            }
            println!("results written to {}", out.display());
            ExitCode::from(output.status.code() as u8)
        }
        Command::Check { scenario } => {
            let text = match load_scenario(&scenario) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            match config::parse_config(&text).and_then(|c| config::build_experiment(&c).map(|_| ()))
            {
                Ok(()) => {
                    println!("ok: scenario validates");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::ListKernels => {
            println!("kernel catalog (scenario [kernel] section):");
            println!("  type = \"vacuum_inertial\"                 massless-scalar Minkowski vacuum on an inertial worldline");
            println!("  type = \"vacuum_accelerated\", a = <f64>   Minkowski vacuum on a uniformly accelerated worldline (KMS at 2*pi/a)");
            println!("  type = \"thermal_inertial\", beta = <f64>  inertial thermal state at inverse temperature beta");
            println!();
            println!("modifiers:");
            println!("  operator = \"hermitian\" | \"complex_scalar\"");
            println!("  coupling = \"linear\" | \"derivative\"       (derivative: pointlike only)");
            println!("  [smearing] profile = \"pointlike\" | \"gaussian\" (sigma, offset)");
            println!();
            println!("bundled scenarios:");
            for (name, _) in BUNDLED {
                println!("  {name}");
            }
            ExitCode::SUCCESS
        }
        Command::Plotdata {
            results_dir,
            kind,
            out,
        } => {
            let kind = match plotdata::PlotKind::parse(&kind) {
                Ok(k) => k,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            match plotdata::emit_plotdata(&results_dir, kind) {
                Ok(text) => match out {
                    Some(path) => {
                        if let Err(e) = std::fs::write(&path, text) {
                            eprintln!("error: cannot write {}: {e}", path.display());
                            return ExitCode::from(2);
                        }
                        ExitCode::SUCCESS
                    }
                    None => {
                        print!("{text}");
                        ExitCode::SUCCESS
                    }
                },
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
