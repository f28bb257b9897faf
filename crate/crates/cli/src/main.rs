use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use covent::diagnostics::{alpha_ratio_csv, entropy_scan, entropy_scan_csv, minimal_entropy};
use covent::family::{antisymmetric_support_residual, OptimalProcess};
use covent::linalg::RngState;
use covent::process::{fmt_sig, positivity_region_scan, region_csv};
use covent::qubit_demo::{covariance_demo, project_process, triplet_weights, TotalSpin};
use covent::sud::BlochVector;
use covent::verify::{run_suite, VerifyConfig};

/// Covariant two-particle processes: verification suite, scans and demos.
#[derive(Parser, Debug)]
#[command(name = "covent", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the analytic-vs-numeric suite over D in [2, dim-max]; exit 1 if any check fails.
    Verify(VerifyArgs),
    /// Positivity scan of the (p2, p3, p4) simplex on the alpha1 = alpha2, real-beta slice (CSV).
    Region(RegionArgs),
    /// Entropy, index of correlation and partial-transpose minimum along the optimal family (CSV).
    EntropyScan(EntropyScanArgs),
    /// Local information of the family against optimal cloning (CSV).
    AlphaRatio(AlphaRatioArgs),
    /// Parameters and reference output of one family member (JSON).
    Family(FamilyArgs),
    /// Two-qubit total-angular-momentum projection (JSON).
    DemoProjection(DemoArgs),
}

#[derive(Args, Debug)]
struct OutArg {
    /// Output file, written atomically; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    dim_max: usize,
    /// Random samples per check and dimension.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Tolerance for every equality check.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// JSON report path (the human-readable summary always goes to stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RegionArgs {
    #[arg(long, default_value_t = 4)]
    dim: usize,
    /// Lattice steps per unit of probability.
    #[arg(long, default_value_t = 60)]
    grid: usize,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args, Debug)]
struct EntropyScanArgs {
    #[arg(long, default_value_t = 3)]
    dim_min: usize,
    #[arg(long, default_value_t = 12)]
    dim_max: usize,
    /// p4 steps per unit; (D-2)/D is always added to the grid.
    #[arg(long, default_value_t = 100)]
    grid: usize,
    /// Also write the minimal-entropy table `D,S_min,argmin_p4` here.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args, Debug)]
struct AlphaRatioArgs {
    #[arg(long, default_value_t = 2)]
    dim_min: usize,
    #[arg(long, default_value_t = 32)]
    dim_max: usize,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, default_value_t = 4)]
    dim: usize,
    /// Weight of the antisymmetric-pair block, in [0, 1] (0 for D = 2).
    #[arg(long, default_value_t = 0.5)]
    p4: f64,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args, Debug)]
struct DemoArgs {
    /// Haar unitaries for the covariance check.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    out: OutArg,
}

enum Failure {
    Config(String),
    Checks,
}

impl From<covent::Error> for Failure {
    fn from(e: covent::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Verify(a) => verify(a),
        Command::Region(a) => {
            check_grid(a.grid)?;
            emit(a.out.out.as_deref(), &region_csv(&positivity_region_scan(a.dim, a.grid)?))
        }
        Command::EntropyScan(a) => {
            check_grid(a.grid)?;
            check_range(a.dim_min, a.dim_max)?;
            let rows = entropy_scan(a.dim_min..=a.dim_max, a.grid)?;
            if let Some(path) = &a.summary {
                let mut s = String::from("D,S_min,argmin_p4\n");
                for d in a.dim_min..=a.dim_max {
                    let (smin, argmin) = minimal_entropy(d)?;
                    let at: Vec<String> = argmin.into_iter().map(fmt_sig).collect();
                    s.push_str(&format!("{d},{},{}\n", fmt_sig(smin), at.join(";")));
                }
                write_atomic(path, &s)?;
            }
            emit(a.out.out.as_deref(), &entropy_scan_csv(&rows))
        }
        Command::AlphaRatio(a) => {
            check_range(a.dim_min, a.dim_max)?;
            emit(a.out.out.as_deref(), &alpha_ratio_csv(a.dim_min..=a.dim_max))
        }
        Command::Family(a) => {
            let process = OptimalProcess::new(a.dim, a.p4)?;
            let state = process.reference_output();
            let doc = json!({
                "dim": a.dim,
                "p4": a.p4,
                "params": process.params(),
                "state": state,
                "antisym_residual": antisymmetric_support_residual(&state, a.dim),
            });
            emit(a.out.out.as_deref(), &to_json(&doc))
        }
        Command::DemoProjection(a) => demo(a),
    }
}

fn verify(a: VerifyArgs) -> Result<(), Failure> {
    let config = VerifyConfig { dim_max: a.dim_max, samples: a.samples, seed: a.seed, tol: a.tol };
    let report = run_suite(&config)?;
    print!("{}", report.summary());
    if let Some(path) = &a.out {
        write_atomic(path, &to_json(&report))?;
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn demo(a: DemoArgs) -> Result<(), Failure> {
    let m = BlochVector::reference(2);
    let mut branches = Vec::new();
    for spin in [TotalSpin::Singlet, TotalSpin::Triplet] {
        let outcome = project_process(&m, spin)?;
        branches.push(json!({
            "J": spin.j(),
            "probability": outcome.probability,
            "state": outcome.state.matrix(),
        }));
    }
    let triplet = project_process(&m, TotalSpin::Triplet)?;
    let w = triplet_weights(&triplet.state);
    let doc = json!({
        "input": m,
        "branches": branches,
        "triplet_weights": [
            {"M": 1, "weight": w[0]},
            {"M": 0, "weight": w[1]},
            {"M": -1, "weight": w[2]},
        ],
        "covariance_samples": a.samples,
        "covariance_max_deviation": covariance_demo(&mut RngState::new(a.seed), a.samples)?,
    });
    emit(a.out.out.as_deref(), &to_json(&doc))
}

fn check_grid(grid: usize) -> Result<(), Failure> {
    if grid < 2 {
        return Err(Failure::Config(format!("grid must be >= 2, got {grid}")));
    }
    Ok(())
}

fn check_range(lo: usize, hi: usize) -> Result<(), Failure> {
    if lo < 2 || hi < lo {
        return Err(Failure::Config(format!("need 2 <= dim-min <= dim-max, got {lo}..{hi}")));
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn emit(path: Option<&Path>, content: &str) -> Result<(), Failure> {
    match path {
        Some(p) => write_atomic(p, content),
        None => std::io::stdout().write_all(content.as_bytes()).map_err(|e| Failure::Config(format!("stdout: {e}"))),
    }
}

/// Write to a sibling temp file and rename it over `path`.
fn write_atomic(path: &Path, content: &str) -> Result<(), Failure> {
    let err = |e: &dyn std::fmt::Display| Failure::Config(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| err(&e))?;
    tmp.write_all(content.as_bytes()).map_err(|e| err(&e))?;
    tmp.persist(path).map_err(|e| err(&e.error))?;
    Ok(())
}
