//! Thin command-line front end over the library pipeline.
//!
//! Exit codes: 0 all requested eigenvalues verified, 2 partial or failed
//! verification, 3 certificate failure, 4 input error.

use clap::{Args, Parser, Subcommand};
use eigenclose::certify;
use eigenclose::driver::{
    GapMode, ProblemSource, RunConfig, SolverPath, exit_code_for, run_verification,
};
use eigenclose::error::Error;
use eigenclose::io::matrix_market::{load_matrix_market, write_matrix_market};
use eigenclose::operator::ScaledPencil;
use eigenclose::problems;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "eigenclose",
    about = "Guaranteed eigenvalue enclosures for Hermitian pencils in a prescribed interval",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write generator pencils as Matrix Market files
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Certify a lower bound of lambda_min for a Hermitian matrix
    CheckPd {
        /// Matrix Market file
        matrix: PathBuf,
        /// Shrink factor applied to the numerical estimate
        #[arg(long, default_value_t = 0.99)]
        c: f64,
    },
    /// Certify an exclusion band around the target window
    Gap(GapArgs),
    /// Run the full verification pipeline and print the JSON report
    Verify(VerifyArgs),
    /// Run the built-in self checks
    Selftest,
}

#[derive(Subcommand)]
enum GenKind {
    /// A = tridiag(-1,2,-1), B = diag(Normal(1, variance))
    MassSpring {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        variance: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// A = pentadiag(1,2,3,2,1), B = I except the last diagonal entry
    Pentadiag {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        b_last: f64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct GapArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Target window as `lo,hi`
    #[arg(long, value_parser = parse_window)]
    window: (f64, f64),
    /// Scaled exclusion target t (> 1): certify no eigenvalue in 1 < |x| <= t
    #[arg(long)]
    target: Option<f64>,
    /// Approximate nearest outside eigenvalue in problem units
    #[arg(long)]
    hint: Option<f64>,
    #[arg(long, default_value_t = 0.99)]
    c: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Matrix Market file for A (alternative to --gen-*)
    #[arg(long)]
    a: Option<PathBuf>,
    /// Matrix Market file for B
    #[arg(long)]
    b: Option<PathBuf>,
    /// Generate the mass-spring pencil of this size instead of loading files
    #[arg(long, conflicts_with_all = ["a", "b"])]
    gen_mass_spring: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    variance: f64,
    /// Generate the pentadiagonal pencil of this size
    #[arg(long, conflicts_with_all = ["a", "b", "gen_mass_spring"])]
    gen_pentadiag: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    b_last: f64,
    /// Target window as `lo,hi`
    #[arg(long, value_parser = parse_window)]
    window: (f64, f64),
    /// Number of eigenvalues in the window (trusted input)
    #[arg(long)]
    m: usize,
    /// Block size
    #[arg(long = "L", short = 'L')]
    l: usize,
    /// Moment order
    #[arg(long = "M", short = 'M')]
    moment_order: usize,
    #[arg(long, default_value_t = 1e-15)]
    delta: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Gap certificate: scaled exclusion target (> 1)
    #[arg(long)]
    gap_target: Option<f64>,
    /// Gap certificate: approximate outside eigenvalue in problem units
    #[arg(long, conflicts_with = "gap_target")]
    lambda_hat_hint: Option<f64>,
    /// Force the diagonal-perturbation gap route
    #[arg(long, conflicts_with_all = ["gap_target", "lambda_hat_hint"])]
    gap_diag_perturbation: bool,
    #[arg(long, default_value_t = 0.99)]
    c: f64,
    /// Solver path: auto, fast-pd or general
    #[arg(long, default_value = "auto")]
    solver: String,
    #[arg(long, default_value_t = 1)]
    correction_passes: usize,
    /// Worker threads (default: rayon's choice; EIGENCLOSE_THREADS overrides)
    #[arg(long)]
    threads: Option<usize>,
    /// rank(B) override for semidefinite B
    #[arg(long)]
    rank_b: Option<usize>,
    /// Skip the post-verification enclosure audit
    #[arg(long)]
    no_audit: bool,
    /// Include moment enclosures in the report
    #[arg(long)]
    dump_moments: bool,
    /// Solve only half the nodes and mirror them (real data only)
    #[arg(long)]
    conjugate_symmetry: bool,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| "expected `lo,hi`".to_string())?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("lo: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("hi: {e}"))?;
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Gen { kind } => run_gen(kind),
        Cmd::CheckPd { matrix, c } => run_check_pd(matrix, c),
        Cmd::Gap(args) => run_gap(args),
        Cmd::Verify(args) => run_verify(args),
        Cmd::Selftest => eigenclose::selftest::run(),
    };
    ExitCode::from(code)
}

fn fail(err: &Error) -> u8 {
    eprintln!("error: {err}");
    exit_code_for(err) as u8
}

fn run_gen(kind: GenKind) -> u8 {
    let result = (|| -> eigenclose::Result<(PathBuf, PathBuf)> {
        match kind {
            GenKind::MassSpring {
                n,
                variance,
                seed,
                out_dir,
            } => {
                let (a, b) = problems::gen_mass_spring(n, variance, seed)?;
                let pa = out_dir.join(format!("mass_spring_{n}_a.mtx"));
                let pb = out_dir.join(format!("mass_spring_{n}_b.mtx"));
                write_matrix_market(&a, &pa)?;
                write_matrix_market(&b, &pb)?;
                Ok((pa, pb))
            }
            GenKind::Pentadiag { n, b_last, out_dir } => {
                let (a, b) = problems::gen_pentadiag(n, b_last)?;
                let pa = out_dir.join(format!("pentadiag_{n}_a.mtx"));
                let pb = out_dir.join(format!("pentadiag_{n}_b.mtx"));
                write_matrix_market(&a, &pa)?;
                write_matrix_market(&b, &pb)?;
                Ok((pa, pb))
            }
        }
    })();
    match result {
        Ok((pa, pb)) => {
            println!("wrote {}", pa.display());
            println!("wrote {}", pb.display());
            0
        }
        Err(e) => fail(&e),
    }
}

fn run_check_pd(matrix: PathBuf, c: f64) -> u8 {
    let result = (|| -> eigenclose::Result<f64> {
        let op = load_matrix_market(&matrix)?;
        certify::lambda_min_lower_bound(&op, c)
    })();
    match result {
        Ok(t) => {
            println!("certified: lambda_min > {t:.17e}");
            0
        }
        Err(e) => fail(&e),
    }
}

fn run_gap(args: GapArgs) -> u8 {
    let result = (|| -> eigenclose::Result<f64> {
        let a = load_matrix_market(&args.a)?;
        let b = load_matrix_market(&args.b)?;
        let (lo, hi) = args.window;
        let pencil = ScaledPencil::new(&a, &b, lo, hi)?;
        let target = match (args.target, args.hint) {
            (Some(t), _) => t,
            (None, Some(hint)) => {
                let gamma = 0.5 * (lo + hi);
                let rho = 0.5 * (hi - lo);
                args.c * ((hint - gamma) / rho).abs()
            }
            (None, None) => {
                return Err(Error::Config(
                    "pass --target (scaled) or --hint (problem units)".into(),
                ));
            }
        };
        let cert = certify::verify_outside_gap(&pencil, target)?;
        Ok(cert.lambda_hat_lower)
    })();
    match result {
        Ok(t) => {
            println!("{{ \"lambda_hat_lower\": {t} }}");
            0
        }
        Err(e) => fail(&e),
    }
}

fn run_verify(args: VerifyArgs) -> u8 {
    let source = if let Some(n) = args.gen_mass_spring {
        ProblemSource::MassSpring {
            n,
            variance: args.variance,
        }
    } else if let Some(n) = args.gen_pentadiag {
        ProblemSource::Pentadiag {
            n,
            b_last: args.b_last,
        }
    } else {
        match (args.a, args.b) {
            (Some(a), Some(b)) => ProblemSource::Files { a, b },
            _ => {
                return fail(&Error::Config(
                    "pass --a and --b, or one of the --gen-* options".into(),
                ));
            }
        }
    };

    let (lo, hi) = args.window;
    let mut cfg = RunConfig::new(source, lo, hi, args.m, args.l, args.moment_order);
    cfg.delta = args.delta;
    cfg.seed = args.seed;
    cfg.c = args.c;
    cfg.correction_passes = args.correction_passes.min(3);
    cfg.rank_b = args.rank_b;
    cfg.audit = !args.no_audit;
    cfg.dump_moments = args.dump_moments;
    cfg.exploit_conjugate_symmetry = args.conjugate_symmetry;
    cfg.gap_mode = if let Some(t) = args.gap_target {
        GapMode::Target(t)
    } else if let Some(h) = args.lambda_hat_hint {
        GapMode::Hint(h)
    } else if args.gap_diag_perturbation {
        GapMode::DiagPerturbation
    } else {
        GapMode::Auto
    };
    cfg.solver = match args.solver.as_str() {
        "auto" => SolverPath::Auto,
        "fast-pd" => SolverPath::FastPd,
        "general" => SolverPath::General,
        other => {
            return fail(&Error::Config(format!(
                "unknown solver path `{other}` (use auto, fast-pd or general)"
            )));
        }
    };
    cfg.threads = args.threads.or_else(|| {
        std::env::var("EIGENCLOSE_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    });

    match run_verification(&cfg) {
        Ok(outcome) => {
            let json = outcome.report.to_json();
            match args.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, json) {
                        return fail(&Error::Io(e));
                    }
                    eprintln!("report written to {}", path.display());
                }
                None => println!("{json}"),
            }
            outcome.exit_code as u8
        }
        Err(e) => fail(&e),
    }
}
