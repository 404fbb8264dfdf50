//! Command-line surface for complex circle manifold optimization:
//! generate problem instances, solve them with Riemannian gradient descent,
//! and verify the library's identities on random data.
//!
//! Exit codes: 0 success/converged, 1 verification failure or internal
//! error, 2 iteration budget exhausted, 3 line search failed, 4 input error.

mod checks;
mod matrix_file;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use ccm_core::{
    make_random_hermitian, make_steering_problem, random_point, solve_rgd, HermitianMatrix,
    OptimizerConfig, SolveStatus,
};
use clap::{Parser, Subcommand, ValueEnum};

use checks::run_checks;
use matrix_file::MatrixFile;
use report::{InstanceInfo, RunReport};

const EXIT_CHECK_OR_INTERNAL: u8 = 1;
const EXIT_MAX_ITERS: u8 = 2;
const EXIT_LINE_SEARCH_FAILED: u8 = 3;
const EXIT_INPUT_ERROR: u8 = 4;

#[derive(Parser)]
#[command(
    name = "ccm",
    version,
    about = "Optimization of Hermitian quadratic forms over unit-modulus complex vectors",
    long_about = "Generate problem instances, run Riemannian gradient descent on the \
complex circle manifold, and verify gradient/projection/retraction identities.\n\n\
Exit codes: 0 success or converged; 1 verification failure or internal error; \
2 iteration budget exhausted; 3 line search failed; 4 input error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenerateKind {
    /// Symmetrized seeded complex-Gaussian matrix.
    RandomHermitian,
    /// Weighted sum of steering-vector outer products (half-wavelength ULA).
    Steering,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a problem instance and write it as a matrix file.
    Generate {
        #[arg(long, value_enum)]
        kind: GenerateKind,
        /// Instance dimension (array elements for steering).
        #[arg(long)]
        n: usize,
        /// RNG seed (random-hermitian only).
        #[arg(long)]
        seed: Option<u64>,
        /// Entry scale (random-hermitian only, default 1).
        #[arg(long)]
        scale: Option<f64>,
        /// Steering angles in radians, comma separated (steering only).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        angles: Option<Vec<f64>>,
        /// Non-negative weights, comma separated (steering only).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<f64>>,
        /// Optional label stored in the file (defaults to the provenance).
        #[arg(long)]
        label: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve an instance with Riemannian gradient descent and write a report.
    Solve {
        #[arg(long)]
        matrix: PathBuf,
        /// Seed for the random starting point.
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        max_iters: Option<usize>,
        #[arg(long)]
        grad_tol: Option<f64>,
        /// Overrides the default 1 / (2 ||A||_inf + eps) first trial step.
        #[arg(long)]
        initial_step: Option<f64>,
        #[arg(long)]
        out: PathBuf,
        /// Also write the trace as CSV (iter,cost,grad_norm,step,backtracks).
        #[arg(long)]
        trace_csv: Option<PathBuf>,
    },
    /// Verify gradient, projection, and retraction identities on random data.
    Check {
        /// Instance to check (mutually exclusive with --random).
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Generate a random Hermitian instance of this dimension instead.
        #[arg(long)]
        random: Option<usize>,
        /// Seed for the instance (with --random) and the sampled points.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random points per check.
        #[arg(long)]
        trials: usize,
        /// Scale the first coordinate of every sampled point off its circle
        /// (negative control; makes manifold checks fail).
        #[arg(long, hide = true)]
        perturb_modulus: Option<f64>,
    },
}

enum AppError {
    /// Bad file, bad flags, bad parameters: exit 4.
    Input(String),
    /// Unexpected internal failure: exit 1.
    Internal(String),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Input(_) => EXIT_INPUT_ERROR,
            AppError::Internal(_) => EXIT_CHECK_OR_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Input(msg) | AppError::Internal(msg) => msg,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            eprint!("{err}");
            return ExitCode::from(EXIT_INPUT_ERROR);
        }
    };

    let outcome = match cli.command {
        Command::Generate {
            kind,
            n,
            seed,
            scale,
            angles,
            weights,
            label,
            out,
        } => cmd_generate(kind, n, seed, scale, angles, weights, label, &out),
        Command::Solve {
            matrix,
            seed,
            max_iters,
            grad_tol,
            initial_step,
            out,
            trace_csv,
        } => cmd_solve(
            &matrix,
            seed,
            max_iters,
            grad_tol,
            initial_step,
            &out,
            trace_csv.as_deref(),
        ),
        Command::Check {
            matrix,
            random,
            seed,
            trials,
            perturb_modulus,
        } => cmd_check(matrix.as_deref(), random, seed, trials, perturb_modulus),
    };

    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    kind: GenerateKind,
    n: usize,
    seed: Option<u64>,
    scale: Option<f64>,
    angles: Option<Vec<f64>>,
    weights: Option<Vec<f64>>,
    label: Option<String>,
    out: &Path,
) -> Result<u8, AppError> {
    let instance = match kind {
        GenerateKind::RandomHermitian => {
            if angles.is_some() || weights.is_some() {
                return Err(AppError::Input(
                    "--angles/--weights are only valid with --kind steering".into(),
                ));
            }
            let seed = seed.ok_or_else(|| {
                AppError::Input("--seed is required for --kind random-hermitian".into())
            })?;
            make_random_hermitian(n, seed, scale.unwrap_or(1.0))
                .map_err(|e| AppError::Input(e.to_string()))?
        }
        GenerateKind::Steering => {
            if seed.is_some() || scale.is_some() {
                return Err(AppError::Input(
                    "--seed/--scale are only valid with --kind random-hermitian".into(),
                ));
            }
            let angles = angles.ok_or_else(|| {
                AppError::Input("--angles is required for --kind steering".into())
            })?;
            let weights = weights.ok_or_else(|| {
                AppError::Input("--weights is required for --kind steering".into())
            })?;
            make_steering_problem(n, &angles, &weights)
                .map_err(|e| AppError::Input(e.to_string()))?
        }
    };

    let file = MatrixFile::from_matrix(
        &instance.a,
        Some(label.unwrap_or_else(|| instance.provenance.clone())),
    );
    file.write(out).map_err(AppError::Input)?;
    println!(
        "wrote {}x{} instance {} to {}",
        n,
        n,
        instance.provenance,
        out.display()
    );
    Ok(0)
}

fn cmd_solve(
    matrix: &Path,
    seed: u64,
    max_iters: Option<usize>,
    grad_tol: Option<f64>,
    initial_step: Option<f64>,
    out: &Path,
    trace_csv: Option<&Path>,
) -> Result<u8, AppError> {
    let file = MatrixFile::load(matrix).map_err(AppError::Input)?;
    let a: HermitianMatrix = file.to_matrix().map_err(AppError::Input)?;

    let mut config = OptimizerConfig::for_problem(&a);
    if let Some(k) = max_iters {
        config.max_iters = k;
    }
    if let Some(t) = grad_tol {
        config.grad_tol = t;
    }
    if let Some(t0) = initial_step {
        config.initial_step = t0;
    }
    config
        .validate()
        .map_err(|e| AppError::Input(e.to_string()))?;

    let x0 = random_point(a.dim(), seed).map_err(|e| AppError::Internal(e.to_string()))?;
    let started = Instant::now();
    let result = solve_rgd(&a, &x0, &config).map_err(|e| AppError::Internal(e.to_string()))?;
    let wall_time = started.elapsed().as_secs_f64();

    let run_report = RunReport::new(
        InstanceInfo {
            path: matrix.display().to_string(),
            n: a.dim(),
            label: file.label.clone(),
        },
        seed,
        &config,
        &result,
        wall_time,
    );
    run_report.write(out).map_err(AppError::Input)?;
    if let Some(csv) = trace_csv {
        run_report.write_trace_csv(csv).map_err(AppError::Input)?;
    }

    println!(
        "status={} iterations={} cost_final={:.12e} grad_norm_final={:.3e} report={}",
        run_report.status,
        run_report.iterations,
        run_report.cost_final,
        run_report.grad_norm_final,
        out.display()
    );
    Ok(match result.status {
        SolveStatus::Converged => 0,
        SolveStatus::MaxIters => EXIT_MAX_ITERS,
        SolveStatus::LineSearchFailed => EXIT_LINE_SEARCH_FAILED,
    })
}

fn cmd_check(
    matrix: Option<&Path>,
    random: Option<usize>,
    seed: u64,
    trials: usize,
    perturb_modulus: Option<f64>,
) -> Result<u8, AppError> {
    if trials == 0 {
        return Err(AppError::Input("--trials must be at least 1".into()));
    }
    let (a, description) = match (matrix, random) {
        (Some(path), None) => {
            let file = MatrixFile::load(path).map_err(AppError::Input)?;
            let a = file.to_matrix().map_err(AppError::Input)?;
            let description = file.label.unwrap_or_else(|| path.display().to_string());
            (a, description)
        }
        (None, Some(n)) => {
            let instance =
                make_random_hermitian(n, seed, 1.0).map_err(|e| AppError::Input(e.to_string()))?;
            (instance.a, instance.provenance)
        }
        _ => {
            return Err(AppError::Input(
                "exactly one of --matrix or --random is required".into(),
            ));
        }
    };

    println!("instance: {description} (n={})", a.dim());
    println!("trials: {trials}, point seed: {seed}");
    let outcomes = run_checks(&a, trials, seed, perturb_modulus).map_err(AppError::Internal)?;

    println!(
        "{:<24} {:>14} {:>12}   status",
        "check", "max residual", "tolerance"
    );
    let mut failed = Vec::new();
    for outcome in &outcomes {
        println!(
            "{:<24} {:>14.3e} {:>12.1e}   {}",
            outcome.name,
            outcome.residual,
            outcome.tolerance,
            if outcome.passed() { "PASS" } else { "FAIL" }
        );
        if !outcome.passed() {
            failed.push(outcome.name);
        }
    }
    if failed.is_empty() {
        println!("all checks passed");
        Ok(0)
    } else {
        println!("failed checks: {}", failed.join(", "));
        Ok(EXIT_CHECK_OR_INTERNAL)
    }
}
