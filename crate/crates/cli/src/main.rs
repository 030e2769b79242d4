//! `lvmb`: verify good systems, their complexes and fans, and run the
//! inverse construction from the command line.
//!
//! Exit codes: 0 when the verdict is true, 1 when it is false, 2 when the
//! input is malformed.

mod commands;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use commands::{CmdResult, Failure};
use report::Report;

#[derive(Parser)]
#[command(name = "lvmb", version, about = "Exact verifier for LVMB good systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Print the JSON report on stdout instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Add decimal renderings of rationals (non-authoritative).
    #[arg(long, global = true)]
    approx: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a system is good: acceptability, SE, imbrication.
    Check { system: PathBuf },
    /// Associated complex, SEU equivalences and minimality of a fundamental set.
    Complex { set: PathBuf },
    /// Pseudo-manifold and homology certificate for a complex.
    SphereCert {
        complex: PathBuf,
        /// Expected sphere dimension; defaults to the complex dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// The fan of the arrangement complement and its orbit cones.
    Fan {
        set: PathBuf,
        /// Write the fan JSON here.
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
    },
    /// Project the fan and check it is complete with the right complex.
    Project {
        system: PathBuf,
        /// Write the projected fan JSON here.
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
    },
    /// Combinatorics and vertices of the associated polytope.
    Polytope {
        system: PathBuf,
        /// Translate the directions by this point first, e.g. `1/4,1/4`.
        #[arg(long, value_name = "X")]
        translate: Option<String>,
    },
    /// Check a witness point, or search the member barycenters for one.
    LvmWitness {
        system: PathBuf,
        #[arg(long, value_name = "X")]
        point: Option<String>,
    },
    /// Build a good system from a starshaped realization.
    Inverse {
        realization: PathBuf,
        /// Write the constructed system JSON here.
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
    },
    /// Add two indispensable elements and one complex coordinate.
    Stabilize {
        system: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: usize,
        /// Write the stabilized system JSON here.
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
    },
    /// Moment-angle model of the associated complex.
    Ma {
        set: PathBuf,
        /// Ambient count; defaults to the ground set size.
        #[arg(long)]
        n: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Complex { .. } => "complex",
            Command::SphereCert { .. } => "sphere-cert",
            Command::Fan { .. } => "fan",
            Command::Project { .. } => "project",
            Command::Polytope { .. } => "polytope",
            Command::LvmWitness { .. } => "lvm-witness",
            Command::Inverse { .. } => "inverse",
            Command::Stabilize { .. } => "stabilize",
            Command::Ma { .. } => "ma",
        }
    }

    fn input(&self) -> &Path {
        match self {
            Command::Check { system }
            | Command::Project { system, .. }
            | Command::Polytope { system, .. }
            | Command::LvmWitness { system, .. }
            | Command::Stabilize { system, .. } => system,
            Command::Complex { set } | Command::Fan { set, .. } | Command::Ma { set, .. } => set,
            Command::SphereCert { complex, .. } => complex,
            Command::Inverse { realization, .. } => realization,
        }
    }

    fn emit(&self) -> Option<&Path> {
        match self {
            Command::Fan { emit, .. }
            | Command::Project { emit, .. }
            | Command::Inverse { emit, .. }
            | Command::Stabilize { emit, .. } => emit.as_deref(),
            _ => None,
        }
    }

    fn run(&self, text: &str) -> CmdResult {
        match self {
            Command::Check { .. } => commands::check(text),
            Command::Complex { .. } => commands::complex(text),
            Command::SphereCert { dim, .. } => commands::sphere_cert(text, *dim),
            Command::Fan { .. } => commands::fan(text),
            Command::Project { .. } => commands::project(text),
            Command::Polytope { translate, .. } => commands::polytope(text, translate.as_deref()),
            Command::LvmWitness { point, .. } => commands::lvm_witness(text, point.as_deref()),
            Command::Inverse { .. } => commands::inverse(text),
            Command::Stabilize { times, .. } => commands::stabilize_cmd(text, *times),
            Command::Ma { n, .. } => commands::ma(text, *n),
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("LVMB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let name = cli.command.name();
    let started = Instant::now();

    let bytes = match fs::read(cli.command.input()) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("lvmb {name}: cannot read {}: {e}", cli.command.input().display());
            return ExitCode::from(2);
        }
    };
    let text = String::from_utf8_lossy(&bytes);

    let (report, summary, artifact) = match cli.command.run(&text) {
        Ok(out) => (
            Report::new(name, &bytes, out.verdict, out.results),
            out.summary,
            out.artifact,
        ),
        Err(Failure::Negative(e)) => {
            let results = json!({"error": {"kind": error_kind(&e), "message": e.to_string()}});
            (Report::new(name, &bytes, false, results), vec![e.to_string()], None)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("lvmb {name}: {msg}");
            return ExitCode::from(2);
        }
    };
    let mut report = report;
    if cli.common.approx {
        report.add_approximations();
    }
    let body = report.to_json();

    let mut io_errors = Vec::new();
    if let Some(path) = &cli.common.out {
        io_errors.extend(write_file(path, &body).err());
    }
    if let (Some(path), Some(artifact)) = (cli.command.emit(), &artifact) {
        let text = serde_json::to_string_pretty(artifact).expect("artifact serializes") + "\n";
        io_errors.extend(write_file(path, &text).err());
    }

    if cli.common.json {
        print!("{body}");
    } else {
        for line in &summary {
            println!("{line}");
        }
        println!("verdict: {}", report.verdict);
    }
    eprintln!("lvmb {name}: {:.1} ms", started.elapsed().as_secs_f64() * 1e3);

    if !io_errors.is_empty() {
        for e in io_errors {
            eprintln!("lvmb {name}: {e}");
        }
        return ExitCode::from(2);
    }
    if report.verdict {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Variant name of a core error, e.g. `NotGoodSystem`.
fn error_kind(e: &lvmb_core::Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}
