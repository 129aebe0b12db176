//! Tour of the interval kernel: outward-rounded arithmetic, complex
//! rectangles, enclosed trigonometry and the containment guarantee.
//!
//! Run with: cargo run --example interval_basics

use eigenclose::interval::{ComplexInterval, RealInterval, pi_bracket, sin_cos};
use num_complex::Complex64;

fn main() -> eigenclose::Result<()> {
    // Integer endpoints stay exact.
    let a = RealInterval::new(1.0, 2.0)?;
    let b = RealInterval::new(3.0, 4.0)?;
    println!("[1,2] + [3,4]      = [{}, {}]", (a + b).inf, (a + b).sup);

    // 0.1 + 0.2 is famously not 0.3 in binary64; the interval sum encloses
    // the exact real sum with a two-ulp-wide interval.
    let s = RealInterval::point(0.1) + RealInterval::point(0.2);
    println!(
        "0.1 + 0.2          = [{:.20}, {:.20}] (width {:.3e})",
        s.inf,
        s.sup,
        s.width()
    );

    // Division by an interval containing zero is an explicit error.
    let denom = RealInterval::new(-1.0, 1.0)?;
    println!(
        "[1,2] / [-1,1]     -> {}",
        a.div(&denom).err().map(|e| e.to_string()).unwrap_or_default()
    );

    // Complex rectangles: |3 + 4i| is bounded by 5 within one ulp.
    let z = ComplexInterval::point(Complex64::new(3.0, 4.0));
    println!("mag(3 + 4i)        = {:.17}", z.mag());

    // The hard-coded bracket of pi and an enclosed quarter turn.
    let pi = pi_bracket();
    println!("pi bracket          = [{:.17}, {:.17}]", pi.inf, pi.sup);
    let (sin_q, cos_q) = sin_cos(&pi.scale(0.5))?;
    println!(
        "sin(pi/2)          in [{:.17}, {:.17}]",
        sin_q.inf, sin_q.sup
    );
    println!(
        "cos(pi/2)          in [{:.3e}, {:.3e}] (contains 0: {})",
        cos_q.inf,
        cos_q.sup,
        cos_q.contains(0.0)
    );
    Ok(())
}
