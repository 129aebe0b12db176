//! Verified solution of one shifted node system (z B - A') Y = B V:
//! the cheap uniform norm bound against the dense approximate-inverse
//! enclosure, and the effect of a staggered correction.
//!
//! Run with: cargo run --example verified_solve

use eigenclose::certify::lambda_min_lower_bound;
use eigenclose::interval::ComplexInterval;
use eigenclose::linsolve::{
    ShiftedSystem, SolveCertificate, enclose_fast_pd, enclose_general, factor_midpoint,
    staggered_correction,
};
use eigenclose::operator::ScaledPencil;
use eigenclose::problems::{gaussian_matrix, gen_mass_spring};
use num_complex::Complex64;

fn describe(cert: &SolveCertificate) -> String {
    match cert {
        SolveCertificate::Uniform { err, .. } => {
            format!("uniform bound per column: {:?}", err)
        }
        SolveCertificate::Entrywise { rad, .. } => {
            let worst = rad.iter().copied().fold(0.0f64, f64::max);
            format!("entrywise radii, max {worst:.3e}")
        }
    }
}

fn main() -> eigenclose::Result<()> {
    let n = 64;
    let (a, b) = gen_mass_spring(n, 0.0, 5)?;
    let pencil = ScaledPencil::new(&a, &b, 1.8, 2.2)?;
    let v = gaussian_matrix(n, 2, 11);
    let bv = b.matmat_interval(&v);
    let bv_mid = b.matmat(&v);

    // a node high on the unit circle
    let z = ComplexInterval::point(Complex64::new(0.3826834323650898, 0.9238795325112867));
    let sys = ShiftedSystem::new(&pencil, z, &bv, &bv_mid)?;
    let fact = factor_midpoint(&sys)?;
    let y = fact.solve(&bv_mid);

    let lam_b = lambda_min_lower_bound(&b, 0.99)?;
    println!("certified lambda_min(B) > {lam_b}");

    let fast = enclose_fast_pd(&sys, y.clone(), lam_b)?;
    println!("fast path:      {}", describe(&fast));

    let corrected = staggered_correction(&sys, &fact, fast, lam_b)?;
    println!("with correction: {}", describe(&corrected));

    let general = enclose_general(&sys, y)?;
    println!("general path:   {}", describe(&general));
    Ok(())
}
