//! Randomized one-sided soundness suites: every `true`/`Ok` certificate is
//! cross-examined by an independent double-double oracle.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::manual_range_contains)]

mod common;

use common::*;
use eigenclose::certify::{
    lambda_min_lower_bound, verify_outside_gap, verify_positive_definite,
};
use eigenclose::driver::{GapMode, ProblemSource, RunConfig, run_verification};
use eigenclose::hankel::EigenStatus;
use eigenclose::interval::{ComplexInterval, IntervalMatrix};
use eigenclose::linsolve::{ShiftedSystem, approx_solve, enclose_general};
use eigenclose::operator::{HermitianOperator, ScaledPencil};
use eigenclose::problems::gaussian_matrix;
use num_complex::Complex64;
use refmath::Cdd;
use refmath::rng::TestRng;

/// Draw a random Hermitian member of a Hermitian-tagged interval matrix.
fn hermitian_member(m: &IntervalMatrix, rng: &mut TestRng) -> refmath::DMat {
    let n = m.rows();
    let mut out = refmath::DMat::zeros(n, n);
    for i in 0..n {
        let d = m[(i, i)].re;
        out[(i, i)] = Cdd::from_f64(rng.f64_in(d.inf, d.sup), 0.0);
        for j in i + 1..n {
            let e = m[(i, j)];
            let z = Cdd::from_f64(
                rng.f64_in(e.re.inf, e.re.sup),
                rng.f64_in(e.im.inf, e.im.sup),
            );
            out[(i, j)] = z;
            out[(j, i)] = z.conj();
        }
    }
    out
}

/// Whenever the PD certificate accepts, a high-precision Cholesky succeeds
/// on 64 random Hermitian members.
#[test]
fn pd_certificate_member_soundness() {
    let mut rng = TestRng::new(0x5011D);
    let mut accepted = 0usize;
    for trial in 0..60 {
        let n = 2 + rng.usize_below(6);
        let base = random_hermitian(n, 1.0, &mut rng);
        // shift to a random definiteness margin, sometimes negative
        let shift = rng.f64_in(-0.5, 3.0);
        let mut mid = base.clone();
        for i in 0..n {
            mid[(i, i)] += Complex64::new(shift + 1.2, 0.0);
        }
        let rad = 10f64.powi(-(rng.usize_below(10) as i32) - 2);
        let mut iv = IntervalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                iv[(i, j)] = ComplexInterval::point(mid[(i, j)]).inflate(rad);
            }
        }
        let iv = iv.hermitianize().unwrap();
        if verify_positive_definite(&iv).unwrap() {
            accepted += 1;
            for _ in 0..64 {
                let member = hermitian_member(&iv, &mut rng);
                assert!(
                    refmath::linalg::cholesky(&member).is_some(),
                    "trial {trial}: accepted matrix has a non-PD member"
                );
            }
        }
    }
    assert!(accepted >= 10, "suite never exercised acceptance ({accepted})");
}

/// The certified lambda_min lower bound sits strictly below the oracle
/// smallest eigenvalue.
#[test]
fn lambda_min_bound_below_oracle() {
    let mut rng = TestRng::new(0xBEE);
    for _ in 0..40 {
        let n = 2 + rng.usize_below(8);
        let b = random_spd(n, rng.f64_in(0.05, 2.0), &mut rng);
        let b_op = to_operator(&b);
        let t = lambda_min_lower_bound(&b_op, 0.99).unwrap();
        let (vals, _) = refmath::linalg::jacobi_hermitian(&cmat_to_dd(&b));
        let oracle_min = vals[0].to_f64();
        assert!(t < oracle_min, "bound {t} not below oracle {oracle_min}");
        assert!(t > 0.5 * oracle_min, "bound {t} needlessly loose vs {oracle_min}");
    }
}

/// The exclusion-band sweep never certifies a band that the oracle says
/// contains an eigenvalue.
#[test]
fn gap_sweep_never_lies() {
    let mut rng = TestRng::new(0x6A9);
    let mut certified = 0usize;
    for trial in 0..60 {
        let n = 2 + rng.usize_below(6);
        let a = random_hermitian(n, 1.5, &mut rng);
        let b = random_spd(n, 0.4, &mut rng);
        let a_op = to_operator(&a);
        let b_op = to_operator(&b);
        // window [-1, 1] means scaled eigenvalues are the pencil's own
        let pencil = ScaledPencil::new(&a_op, &b_op, -1.0, 1.0).unwrap();
        let t_hi = 1.0 + rng.f64_in(0.05, 2.0);
        let oracle = oracle_eig(&a, &b);
        let in_band = oracle.vals.iter().any(|v| {
            let x = v.to_f64().abs();
            x > 1.0 && x <= t_hi
        });
        // an Err outcome is inconclusive and always allowed
        if verify_outside_gap(&pencil, t_hi).is_ok() {
            certified += 1;
            assert!(
                !in_band,
                "trial {trial}: certified band (1, {t_hi}] contains an eigenvalue"
            );
        }
    }
    assert!(certified >= 10, "sweep never succeeded ({certified})");
}

/// General-path certificates contain the oracle solution entrywise
/// (the fast path is covered at scale by the acceptance suite).
#[test]
fn general_path_containment_randomized() {
    let mut rng = TestRng::new(0x9E9);
    for trial in 0..100 {
        let n = 2 + rng.usize_below(10);
        let a = random_hermitian(n, 1.5, &mut rng);
        let b = random_spd(n, 0.2, &mut rng);
        let a_op = to_operator(&a);
        let b_op = to_operator(&b);
        let pencil = ScaledPencil::new(&a_op, &b_op, -1.0, 1.0).unwrap();
        let v = gaussian_matrix(n, 1 + rng.usize_below(2), rng.next_u64());
        let bv = b_op.matmat_interval(&v);
        let bv_mid = b_op.matmat(&v);
        let z = ComplexInterval::point(Complex64::new(
            rng.f64_in(-1.0, 1.0),
            rng.f64_in(0.2, 1.0) * if rng.bool() { 1.0 } else { -1.0 },
        ));
        let sys = ShiftedSystem::new(&pencil, z, &bv, &bv_mid).unwrap();
        let y = approx_solve(&sys).unwrap();
        let cert = enclose_general(&sys, y).unwrap();
        let enc = cert.enclosure();

        let zm = z.midpoint();
        let mut m = cmat_to_dd(&a);
        let b_dd = cmat_to_dd(&b);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = Cdd::from_f64(zm.re, zm.im) * b_dd[(i, j)] - m[(i, j)];
            }
        }
        let sol = refmath::linalg::solve(&m, &cmat_to_dd(&bv_mid)).unwrap();
        for i in 0..n {
            for c in 0..bv_mid.cols {
                let s = sol[(i, c)];
                assert!(
                    enc[(i, c)].contains(Complex64::new(s.re.to_f64(), s.im.to_f64())),
                    "trial {trial}: oracle escaped at ({i},{c})"
                );
            }
        }
    }
}

/// Solving only half the grid and mirroring (real data) must still produce
/// verified enclosures containing the analytic eigenvalues.
#[test]
fn conjugate_symmetry_flag_consistency() {
    let n = 64;
    let eigs = dd_mass_spring_eigs(n);
    let lo = 0.5 * ((eigs[n / 2 - 3] + eigs[n / 2 - 2]).to_f64());
    let hi = 0.5 * ((eigs[n / 2 + 1] + eigs[n / 2 + 2]).to_f64());
    let mut cfg = RunConfig::new(
        ProblemSource::MassSpring { n, variance: 0.0 },
        lo,
        hi,
        4,
        2,
        2,
    );
    cfg.gap_mode = GapMode::Auto;
    let base = run_verification(&cfg).unwrap();
    cfg.exploit_conjugate_symmetry = true;
    let mirrored = run_verification(&cfg).unwrap();
    assert_eq!(base.exit_code, 0);
    assert_eq!(mirrored.exit_code, 0);
    for (x, y) in base.enclosures.iter().zip(mirrored.enclosures.iter()) {
        let (ix, iy) = (x.interval.unwrap(), y.interval.unwrap());
        // both contain the same analytic values; widths agree to ~2x
        assert!(iy.width() <= 2.0 * ix.width() + 1e-12);
        assert!(ix.width() <= 2.0 * iy.width() + 1e-12);
    }
    let targets = &eigs[n / 2 - 2..n / 2 + 2];
    for (enc, t) in mirrored.enclosures.iter().zip(targets.iter()) {
        let iv = enc.interval.unwrap();
        assert!(interval_contains_dd(iv.inf, iv.sup, *t));
    }
}

/// Count conservation: verified cluster sizes plus failed slots always sum
/// to m, across configurations that succeed, partially fail, and fail.
#[test]
fn count_conservation() {
    let n = 32;
    let eigs = dd_mass_spring_eigs(n);
    let vals: Vec<f64> = eigs.iter().map(|v| v.to_f64()).collect();
    let mid = |i: usize| 0.5 * (vals[i - 1] + vals[i]);
    let c = n / 2;
    for (lo, hi, m) in [
        (mid(c - 2), mid(c + 2), 4usize),  // correct
        (mid(c - 2), mid(c + 3), 4),       // one extra inside
        (mid(c - 1), mid(c + 2), 4),       // one too few inside
    ] {
        let mut cfg = RunConfig::new(
            ProblemSource::MassSpring { n, variance: 0.0 },
            lo,
            hi,
            m,
            2,
            2,
        );
        cfg.gap_mode = GapMode::Target(1.05);
        if let Ok(out) = run_verification(&cfg) {
            let total: usize = out
                .enclosures
                .iter()
                .map(|e| e.cluster_size)
                .sum();
            assert_eq!(total, m, "report: {}", out.report.to_json());
            let verified: usize = out
                .enclosures
                .iter()
                .filter(|e| e.status == EigenStatus::Verified)
                .map(|e| e.cluster_size)
                .sum();
            assert!(verified <= m);
        }
    }
}

/// Regularity certificate sanity on a pencil family with a known regular
/// member and a known singular one.
#[test]
fn pencil_regularity_oracle() {
    use eigenclose::certify::verify_pencil_regular;
    // B positive definite forces regularity
    let mut rng = TestRng::new(0x51D);
    for _ in 0..10 {
        let n = 2 + rng.usize_below(5);
        let a = to_operator(&random_hermitian(n, 1.0, &mut rng));
        let b = to_operator(&random_spd(n, 0.3, &mut rng));
        assert!(verify_pencil_regular(&a, &b).unwrap());
    }
    // common kernel makes the pencil singular: A = B = diag(1, 0)
    let a = HermitianOperator::diagonal(&[1.0, 0.0]).unwrap();
    assert!(!verify_pencil_regular(&a, &a).unwrap());
}
