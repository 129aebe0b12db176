#![allow(dead_code)] // each integration test binary uses its own subset

//! Shared oracle machinery for the integration suites: double-double
//! eigendecompositions, brute-force moment formulas and random pencil
//! generators. Everything here is independent of the library's own
//! verified code paths.

use eigenclose::numerics::CMat;
use eigenclose::operator::HermitianOperator;
use num_complex::Complex64;
use refmath::dd::Dd;
use refmath::linalg::{self, DMat};
use refmath::rng::TestRng;
use refmath::trig::{dd_pi, dd_sin_cos};
use refmath::{Cdd, DMat as RDMat};

pub fn cmat_to_dd(m: &CMat) -> DMat {
    let mut out = DMat::zeros(m.rows, m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            out[(i, j)] = Cdd::from_f64(m[(i, j)].re, m[(i, j)].im);
        }
    }
    out
}

/// Random complex Hermitian matrix with entries of order `scale`.
pub fn random_hermitian(n: usize, scale: f64, rng: &mut TestRng) -> CMat {
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(scale * rng.f64_in(-1.0, 1.0), 0.0);
        for j in i + 1..n {
            let z = Complex64::new(
                scale * rng.f64_in(-0.5, 0.5),
                scale * rng.f64_in(-0.5, 0.5),
            );
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Random Hermitian positive definite matrix with lambda_min >= shift.
pub fn random_spd(n: usize, shift: f64, rng: &mut TestRng) -> CMat {
    let mut c = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            c[(i, j)] = Complex64::new(rng.f64_in(-0.6, 0.6), rng.f64_in(-0.6, 0.6));
        }
    }
    let mut m = c.conj_transpose().matmul(&c);
    for i in 0..n {
        m[(i, i)] += Complex64::new(shift, 0.0);
        m[(i, i)].im = 0.0;
    }
    // exact Hermitian symmetrization of rounding
    for i in 0..n {
        for j in i + 1..n {
            let z = m[(i, j)];
            m[(j, i)] = z.conj();
        }
    }
    m
}

pub fn to_operator(m: &CMat) -> HermitianOperator {
    HermitianOperator::from_dense(m.rows, &m.data).expect("hermitian by construction")
}

/// Double-double eigendata of a Hermitian definite pencil.
pub struct PencilOracle {
    pub n: usize,
    /// Ascending eigenvalues, problem units.
    pub vals: Vec<Dd>,
    /// B-orthonormal eigenvectors (columns), so x_k^H B x_k = 1.
    pub vecs: DMat,
    pub b_dd: DMat,
}

pub fn oracle_eig(a: &CMat, b: &CMat) -> PencilOracle {
    let a_dd = cmat_to_dd(a);
    let b_dd = cmat_to_dd(b);
    let (vals, vecs) = linalg::pencil_eig(&a_dd, &b_dd).expect("definite pencil");
    PencilOracle {
        n: a.rows,
        vals,
        vecs,
        b_dd,
    }
}

impl PencilOracle {
    /// Scaled eigenvalues (lambda - gamma)/rho for the window [lo, hi].
    pub fn scaled_vals(&self, lo: f64, hi: f64) -> Vec<Dd> {
        let gamma = (Dd::from_f64(lo) + Dd::from_f64(hi)) * Dd::from_f64(0.5);
        let rho = (Dd::from_f64(hi) - Dd::from_f64(lo)) * Dd::from_f64(0.5);
        self.vals.iter().map(|&v| (v - gamma) / rho).collect()
    }

    /// Projections u_k = x_k^H B V (length-L rows, one per eigenvalue).
    pub fn projections(&self, v: &CMat) -> Vec<Vec<Cdd>> {
        let v_dd = cmat_to_dd(v);
        let bv = self.b_dd.matmul(&v_dd);
        let mut out = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let mut row = Vec::with_capacity(v.cols);
            for c in 0..v.cols {
                let mut acc = Cdd::ZERO;
                for i in 0..self.n {
                    acc = acc + self.vecs[(i, k)].conj() * bv[(i, c)];
                }
                row.push(acc);
            }
            out.push(row);
        }
        out
    }
}

/// Midpoint-rule quadrature filter lambda'^p / (1 + lambda'^N) for the nodes
/// theta_j = (2j-1) pi / N.
pub fn midpoint_filter(lambda_scaled: Dd, p: usize, n_nodes: usize) -> Dd {
    let num = lambda_scaled.powi(p as u32);
    let den = Dd::ONE + lambda_scaled.powi(n_nodes as u32);
    num / den
}

/// Brute-force truncated moment from the residue formula, restricted to
/// eigenvalue indices for which `keep` returns true:
/// sum_k filter(lambda'_k) u_k^H u_k, an L x L matrix.
pub fn brute_moment(
    oracle: &PencilOracle,
    projections: &[Vec<Cdd>],
    scaled_vals: &[Dd],
    p: usize,
    n_nodes: usize,
    keep: impl Fn(usize) -> bool,
) -> RDMat {
    let l = projections[0].len();
    let mut m = RDMat::zeros(l, l);
    for k in 0..oracle.n {
        if !keep(k) {
            continue;
        }
        let f = midpoint_filter(scaled_vals[k], p, n_nodes);
        for r in 0..l {
            for c in 0..l {
                let term = (projections[k][r].conj() * projections[k][c]).scale(f);
                m[(r, c)] = m[(r, c)] + term;
            }
        }
    }
    m
}

/// Direct double-double trapezoidal sum
/// (1/N) sum_j z_j^(p+1) (BV)^H (z_j B - A')^{-1} B V
/// with A' = (A - gamma B)/rho, an entirely solver-based route.
pub fn direct_trapezoid(
    a: &CMat,
    b: &CMat,
    v: &CMat,
    lo: f64,
    hi: f64,
    p: usize,
    n_nodes: usize,
) -> RDMat {
    let n = a.rows;
    let l = v.cols;
    let a_dd = cmat_to_dd(a);
    let b_dd = cmat_to_dd(b);
    let v_dd = cmat_to_dd(v);
    let gamma = (Dd::from_f64(lo) + Dd::from_f64(hi)) * Dd::from_f64(0.5);
    let rho = (Dd::from_f64(hi) - Dd::from_f64(lo)) * Dd::from_f64(0.5);
    let bv = b_dd.matmul(&v_dd);
    let bvh = bv.conj_transpose();

    let mut acc = RDMat::zeros(l, l);
    for j in 1..=n_nodes {
        let theta =
            dd_pi() * Dd::from_f64((2 * j - 1) as f64) / Dd::from_f64(n_nodes as f64);
        let (s, c) = dd_sin_cos(theta);
        let z = Cdd::new(c, s);
        // coefficient matrix z B - (A - gamma B)/rho
        let mut m = RDMat::zeros(n, n);
        for r in 0..n {
            for q in 0..n {
                let scaled = (a_dd[(r, q)] - b_dd[(r, q)].scale(gamma)).scale(Dd::ONE / rho);
                m[(r, q)] = z * b_dd[(r, q)] - scaled;
            }
        }
        let y = linalg::solve(&m, &bv).expect("node system solvable");
        let w = bvh.matmul(&y);
        // z^(p+1)
        let mut zp = Cdd::ONE;
        for _ in 0..=p {
            zp = zp * z;
        }
        for r in 0..l {
            for q in 0..l {
                acc[(r, q)] = acc[(r, q)] + zp * w[(r, q)];
            }
        }
    }
    acc.scale(Cdd::real(Dd::ONE / Dd::from_f64(n_nodes as f64)))
}

/// Analytic tridiag(-1,2,-1) eigenvalues in double-double, ascending.
pub fn dd_mass_spring_eigs(n: usize) -> Vec<Dd> {
    (1..=n)
        .map(|i| {
            let theta = dd_pi() * Dd::from_f64(i as f64) / Dd::from_f64((n + 1) as f64);
            let (_, c) = dd_sin_cos(theta);
            Dd::from_f64(2.0) - Dd::from_f64(2.0) * c
        })
        .collect()
}

/// Does the binary64 interval [inf, sup] contain the double-double value?
pub fn interval_contains_dd(inf: f64, sup: f64, v: Dd) -> bool {
    Dd::from_f64(inf) <= v && v <= Dd::from_f64(sup)
}
