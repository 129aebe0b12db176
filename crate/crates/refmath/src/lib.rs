//! Reference arithmetic for test oracles.
//!
//! Everything in this crate exists to *check* results produced elsewhere, by
//! independent means and at much higher precision than binary64:
//!
//! - [`dd`] / [`cdd`]: double-double arithmetic (~106 significand bits) for
//!   real and complex scalars.
//! - [`trig`]: double-double sin/cos and a pi constant cross-checked against
//!   an exact Machin-series bracket.
//! - [`rational`]: exact `BigRational` arithmetic; binary64 values convert
//!   losslessly, so containment checks here are exact, not approximate.
//! - [`linalg`]: dense double-double linear algebra (LU, Cholesky, a complex
//!   Hermitian Jacobi eigensolver, definite-pencil eigendecomposition).
//! - [`rng`]: a tiny deterministic generator for building random test cases.
//!
//! This crate must never depend on the library it is used to test.

pub mod cdd;
pub mod dd;
pub mod linalg;
pub mod rational;
pub mod rng;
pub mod trig;

pub use cdd::Cdd;
pub use dd::Dd;
pub use linalg::DMat;
