//! Rigorous eigenvalue enclosures for Hermitian generalized eigenproblems.
//!
//! Given Hermitian matrices A and B (B positive semidefinite, pencil zB - A
//! regular), a real interval known to contain exactly `m` eigenvalues of
//! A x = lambda B x, and block parameters L, M with m = L*M, this crate
//! computes intervals that are mathematically guaranteed to contain those m
//! eigenvalues. The pipeline:
//!
//! 1. scale the target interval to [-1, 1];
//! 2. certify a lower bound on the distance from the window to the nearest
//!    outside eigenvalue, and (optionally) a lower bound on lambda_min(B);
//! 3. pick a trapezoidal node count N from the requested quadrature
//!    tolerance, enclose the quadrature nodes;
//! 4. solve one shifted linear system per node and certify the numerical
//!    solution (a cheap norm bound when B is positive definite, a dense
//!    approximate-inverse enclosure otherwise);
//! 5. assemble interval enclosures of the truncated contour-integral moments
//!    and the small block Hankel pencil built from them;
//! 6. verify the Hankel pencil's eigenvalues with directed rounding and map
//!    them back to the original interval.
//!
//! Every claim marked "verified" is backed by outward-rounded interval
//! arithmetic end to end. [`driver`] hosts the orchestrated pipeline behind
//! the `eigenclose` binary; each stage also has a runnable walkthrough:
//!
//! ```text
//! cargo run --example interval_basics             # outward-rounded kernel
//! cargo run --example pd_certificate              # lambda_min certificates
//! cargo run --example gap_certificate             # exclusion-band sweeps
//! cargo run --example verified_solve              # node solve certificates
//! cargo run --example moment_enclosures           # moments + Hankel pencil
//! cargo run --release --example mass_spring 4096  # end to end, analytic oracle
//! cargo run --release --example pentadiagonal 0   # semidefinite B fallback
//! cargo run --release --example matrix_market     # file-based workflow
//! cargo run --release --example scaling 14        # wall-time growth
//! ```

// `!(x > 0.0)`-style comparisons are load-bearing: NaN must always take the
// conservative branch of a certificate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certify;
pub mod contraction;
pub mod driver;
pub mod error;
pub mod hankel;
pub mod interval;
pub mod io;
pub mod linsolve;
pub mod moments;
pub mod numerics;
pub mod operator;
pub mod problems;
pub mod selftest;

pub use error::{Error, Result};
pub use interval::{ComplexInterval, IntervalMatrix, RealInterval};
pub use operator::HermitianOperator;
