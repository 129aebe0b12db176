//! File-based workflow: write generator pencils to Matrix Market, reload
//! them bit-exactly and verify from the files.
//!
//! Run with: cargo run --release --example matrix_market

use eigenclose::driver::{ProblemSource, RunConfig, run_verification};
use eigenclose::io::matrix_market::{load_matrix_market, write_matrix_market};
use eigenclose::problems::{gen_mass_spring, mass_spring_analytic_eigs};

fn main() -> eigenclose::Result<()> {
    let dir = std::env::temp_dir();
    let pa = dir.join("eigenclose_example_a.mtx");
    let pb = dir.join("eigenclose_example_b.mtx");

    let n = 128;
    let (a, b) = gen_mass_spring(n, 0.0, 9)?;
    write_matrix_market(&a, &pa)?;
    write_matrix_market(&b, &pb)?;
    println!("wrote {} and {}", pa.display(), pb.display());

    // reload is bit-identical
    let a2 = load_matrix_market(&pa)?;
    assert!(a.triplets().eq(a2.triplets()));
    println!("reload is bit-identical ({} stored entries)", a2.nnz());

    let eigs = mass_spring_analytic_eigs(n)?;
    let lo = 0.5 * (eigs[n / 2 - 3].sup + eigs[n / 2 - 2].inf);
    let hi = 0.5 * (eigs[n / 2 + 1].sup + eigs[n / 2 + 2].inf);
    let cfg = RunConfig::new(
        ProblemSource::Files {
            a: pa.clone(),
            b: pb.clone(),
        },
        lo,
        hi,
        4,
        2,
        2,
    );
    let out = run_verification(&cfg)?;
    for row in &out.report.eigenvalues {
        println!(
            "  lambda_{}: [{}, {}] {}",
            row.index,
            row.inf.as_deref().unwrap_or("-"),
            row.sup.as_deref().unwrap_or("-"),
            row.status
        );
    }
    std::fs::remove_file(&pa).ok();
    std::fs::remove_file(&pb).ok();
    std::process::exit(out.exit_code);
}
