//! The semidefinite example: A = pentadiag(1,2,3,2,1), B the identity except
//! a configurable last diagonal entry. With b_last in {0, 1e-8} the cheap
//! norm-bound solver is useless (1/lambda_min(B) explodes) and the pipeline
//! switches to the dense verified solver on its own.
//!
//! Run with: cargo run --release --example pentadiagonal [b_last]

use eigenclose::driver::{GapMode, ProblemSource, RunConfig, run_verification};

fn main() -> eigenclose::Result<()> {
    let b_last: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.0);

    let mut cfg = RunConfig::new(
        ProblemSource::Pentadiag { n: 100, b_last },
        0.95,
        1.05,
        6,
        3,
        2,
    );
    // exclusion band certified up to the scaled target 1.36
    cfg.gap_mode = GapMode::Target(1.36);

    println!("b_last = {b_last:e}, window = [0.95, 1.05], m = 6, L = 3, M = 2");
    let out = run_verification(&cfg)?;
    println!(
        "solver path {}  (lambda_min(B) certificate: {:?})",
        out.report.solver_path, out.report.certificates.lambda_min_b
    );
    for row in &out.report.eigenvalues {
        println!(
            "  lambda_{}: [{}, {}]  {}",
            row.index,
            row.inf.as_deref().unwrap_or("-"),
            row.sup.as_deref().unwrap_or("-"),
            row.status
        );
    }
    for w in &out.report.warnings {
        println!("  note: {w}");
    }
    std::process::exit(out.exit_code);
}
