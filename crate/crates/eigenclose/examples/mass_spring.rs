//! End-to-end verification of the mass-spring chain: four eigenvalues of
//! tridiag(-1,2,-1) x = lambda B x near 2, enclosed with guaranteed bounds
//! and compared against the analytic spectrum 2 - 2 cos(i pi/(n+1)).
//!
//! Run with: cargo run --release --example mass_spring [n]

use eigenclose::driver::{ProblemSource, RunConfig, run_verification};
use eigenclose::problems::mass_spring_analytic_eigs;

fn main() -> eigenclose::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1024);

    // window boundaries at the midpoints between the 4th/5th eigenvalues
    // out from the spectrum center, so exactly four eigenvalues lie inside
    let eigs = mass_spring_analytic_eigs(n)?;
    let lo_i = n / 2 - 2;
    let hi_i = n / 2 + 2;
    let window_lo = 0.5 * (eigs[lo_i - 1].sup + eigs[lo_i].inf);
    let window_hi = 0.5 * (eigs[hi_i - 1].sup + eigs[hi_i].inf);
    println!("n = {n}, window = [{window_lo:.9}, {window_hi:.9}], m = 4, L = M = 2");

    let cfg = RunConfig::new(
        ProblemSource::MassSpring { n, variance: 0.0 },
        window_lo,
        window_hi,
        4,
        2,
        2,
    );
    let out = run_verification(&cfg)?;
    println!(
        "solver path {} with N = {} quadrature nodes",
        out.report.solver_path, out.report.quadrature_nodes
    );
    for (row, target) in out.report.eigenvalues.iter().zip(&eigs[lo_i..hi_i]) {
        println!(
            "  lambda_{}: [{}, {}]  {}  (analytic {:.12})",
            row.index,
            row.inf.as_deref().unwrap_or("-"),
            row.sup.as_deref().unwrap_or("-"),
            row.status,
            target.midpoint()
        );
    }
    println!(
        "total {:.1} ms",
        out.report.timings_ms.get("total").copied().unwrap_or(0.0)
    );
    std::process::exit(out.exit_code);
}
