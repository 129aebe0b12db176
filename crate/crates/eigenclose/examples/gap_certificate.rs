//! Exclusion-band certificates: proving no pencil eigenvalue lies just
//! outside the scaled window, by adaptive regularity sweeps and, for the
//! mass-spring structure, by eigenvalue perturbation.
//!
//! Run with: cargo run --example gap_certificate

use eigenclose::certify::verify_outside_gap;
use eigenclose::operator::{HermitianOperator, ScaledPencil};
use eigenclose::problems::gen_pentadiag;

fn main() -> eigenclose::Result<()> {
    // diagonal toy: eigenvalues 0 and 2 in scaled units, so the band
    // (1, 1.5] is provably empty while (1, 2.5] is not
    let a = HermitianOperator::diagonal(&[0.0, 2.0])?;
    let b = HermitianOperator::diagonal(&[1.0, 1.0])?;
    let pencil = ScaledPencil::new(&a, &b, -1.0, 1.0)?;
    println!(
        "band (1, 1.5] around diag(0, 2): {:?}",
        verify_outside_gap(&pencil, 1.5).map(|c| c.lambda_hat_lower)
    );
    println!(
        "band (1, 2.5] around diag(0, 2): {}",
        verify_outside_gap(&pencil, 2.5)
            .err()
            .map(|e| e.to_string())
            .unwrap_or_default()
    );

    // the pentadiagonal pencil: the band |x| in (1, 1.36] is certified
    // empty for the window [0.95, 1.05]
    let (a, b) = gen_pentadiag(100, 1.0)?;
    let pencil = ScaledPencil::new(&a, &b, 0.95, 1.05)?;
    let cert = verify_outside_gap(&pencil, 1.36)?;
    println!(
        "pentadiagonal n=100: outside eigenvalues certified beyond {} (scaled)",
        cert.lambda_hat_lower
    );
    Ok(())
}
