//! Wall-time sweep of the banded fast path over growing mass-spring chains.
//! The per-node work is linear in n for banded pencils, so total time grows
//! far below cubically.
//!
//! Run with: cargo run --release --example scaling [max_exponent]

use eigenclose::driver::{ProblemSource, RunConfig, run_verification};
use eigenclose::problems::mass_spring_analytic_eigs;
use std::time::Instant;

fn main() -> eigenclose::Result<()> {
    let max_exp: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(16);

    println!("{:>9} {:>6} {:>12} {:>10}", "n", "N", "time_ms", "verified");
    let mut rows = Vec::new();
    for exp in (10..=max_exp).step_by(2) {
        let n = 1usize << exp;
        let eigs = mass_spring_analytic_eigs(n)?;
        let lo = 0.5 * (eigs[n / 2 - 3].sup + eigs[n / 2 - 2].inf);
        let hi = 0.5 * (eigs[n / 2 + 1].sup + eigs[n / 2 + 2].inf);
        let cfg = RunConfig::new(
            ProblemSource::MassSpring { n, variance: 0.0 },
            lo,
            hi,
            4,
            2,
            2,
        );
        let t0 = Instant::now();
        let out = run_verification(&cfg)?;
        let dt = t0.elapsed().as_secs_f64() * 1e3;
        println!(
            "{:>9} {:>6} {:>12.1} {:>10}",
            n,
            out.report.quadrature_nodes,
            dt,
            out.report.all_verified()
        );
        rows.push((n as f64, dt));
    }
    if rows.len() >= 2 {
        let (n0, t0) = rows[0];
        let (n1, t1) = rows[rows.len() - 1];
        let slope = (t1 / t0).ln() / (n1 / n0).ln();
        println!("log-log slope {slope:.2} (cubic would be 3.0)");
    }
    Ok(())
}
