//! Built-in self checks for the `selftest` subcommand.
//!
//! These are sampling-based smoke suites that run without any external
//! oracle: interval results are checked against pointwise binary64 samples
//! drawn from the operand intervals, certificates against problems with
//! analytically known spectra, and the pipeline end to end on a small
//! mass-spring chain. The full extended-precision oracle suites live in the
//! test tree.

use crate::certify;
use crate::driver::{GapMode, ProblemSource, RunConfig, run_verification};
use crate::interval::{ComplexInterval, RealInterval, pi_bracket, sin_cos};
use crate::moments::build_grid;
use crate::problems::{Rng, mass_spring_analytic_eigs};
use num_complex::Complex64;

struct Suite {
    failures: usize,
    total: usize,
}

impl Suite {
    fn new() -> Suite {
        Suite {
            failures: 0,
            total: 0,
        }
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.total += 1;
        if ok {
            println!("PASS  {name}");
        } else {
            self.failures += 1;
            println!("FAIL  {name}");
        }
    }
}

pub fn run() -> u8 {
    let mut suite = Suite::new();

    suite.check("interval arithmetic sampling", interval_sampling());
    suite.check("interval sin/cos sampling", trig_sampling());
    suite.check("pi bracket", pi_bracket_check());
    suite.check("pd certificate on analytic spectrum", pd_analytic());
    suite.check("quadrature grid symmetry", grid_symmetry());
    suite.check("operator norm bound for shifted systems", operator_bound_sampling());
    suite.check("mass-spring end-to-end", end_to_end());

    println!(
        "selftest: {}/{} suites passed",
        suite.total - suite.failures,
        suite.total
    );
    u8::from(suite.failures != 0)
}

fn interval_sampling() -> bool {
    let mut rng = Rng::new(0xA11CE);
    for _ in 0..20_000 {
        let a = rng.gaussian() * 10f64.powi((rng.uniform() * 12.0 - 6.0) as i32);
        let b = rng.gaussian() * 10f64.powi((rng.uniform() * 12.0 - 6.0) as i32);
        let w1 = rng.uniform() * a.abs() * 1e-8;
        let w2 = rng.uniform() * b.abs() * 1e-8;
        let x = RealInterval {
            inf: a - w1,
            sup: a + w1,
        };
        let y = RealInterval {
            inf: b - w2,
            sup: b + w2,
        };
        // pointwise members must land inside each operation's result
        let (pa, pb) = (a, b);
        if !(x.add(&y)).contains(pa + pb) {
            return false;
        }
        if !(x.sub(&y)).contains(pa - pb) {
            return false;
        }
        if !(x.mul(&y)).contains(pa * pb) {
            return false;
        }
        if y.contains_zero() {
            if x.div(&y).is_ok() {
                return false;
            }
        } else if !(x.div(&y).unwrap()).contains(pa / pb) {
            return false;
        }
        if x.square().inf < 0.0 || !x.square().contains(pa * pa) {
            return false;
        }
        let z = ComplexInterval::new(x, y);
        if z.mag() < pa.hypot(pb) {
            return false;
        }
    }
    true
}

fn trig_sampling() -> bool {
    let mut rng = Rng::new(0x7A1);
    for _ in 0..5_000 {
        let c = rng.uniform() * 14.0 - 7.0;
        let w = rng.uniform() * 0.5;
        let t = RealInterval {
            inf: c,
            sup: (c + w).min(7.28),
        };
        if t.inf < -7.28 {
            continue;
        }
        let Ok((s, co)) = sin_cos(&t) else {
            return false;
        };
        for k in 0..=8 {
            let x = t.inf + (t.sup - t.inf) * (k as f64 / 8.0);
            if !s.contains(x.sin()) || !co.contains(x.cos()) {
                return false;
            }
        }
    }
    true
}

fn pi_bracket_check() -> bool {
    let pi = pi_bracket();
    // sin over the bracket must contain 0, cos must be near -1
    let Ok((s, c)) = sin_cos(&pi) else {
        return false;
    };
    s.contains(0.0) && c.contains(-1.0) && pi.width() <= 4.45e-16
}

fn pd_analytic() -> bool {
    // tridiag(-1,2,-1): lambda_min = 2 - 2cos(pi/(n+1))
    for n in [8usize, 32, 100] {
        let eigs = match mass_spring_analytic_eigs(n) {
            Ok(e) => e,
            Err(_) => return false,
        };
        let lam_min = eigs[0].inf;
        let (a, _) = match crate::problems::gen_mass_spring(n, 0.0, 1) {
            Ok(p) => p,
            Err(_) => return false,
        };
        // certify just below, refuse just above
        if !certify::certify_shifted_pd(&a, lam_min * 0.999) {
            return false;
        }
        if certify::certify_shifted_pd(&a, eigs[0].sup * 1.001) {
            return false;
        }
    }
    true
}

fn grid_symmetry() -> bool {
    for n in [4usize, 10, 64] {
        let grid = match build_grid(n) {
            Ok(g) => g,
            Err(_) => return false,
        };
        for j in 0..n {
            let z = &grid.nodes()[j].z;
            let zm = &grid.nodes()[n - 1 - j].z;
            if *z != zm.conj() {
                return false;
            }
            if !(grid.nodes()[j].im_lower > 0.0) {
                return false;
            }
        }
    }
    true
}

fn operator_bound_sampling() -> bool {
    // sampled version of the resolvent bound
    // ||(zB - A)^-1||_2 <= 1/(|Im z| lambda_min(B)) for B = I and random
    // Hermitian A, checked through random vectors
    let mut rng = Rng::new(0xB0B);
    for trial in 0..50 {
        let n = 3 + (trial % 5);
        let mut a = crate::numerics::CMat::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = Complex64::new(rng.gaussian(), 0.0);
            for j in i + 1..n {
                let z = Complex64::new(0.5 * rng.gaussian(), 0.5 * rng.gaussian());
                a[(i, j)] = z;
                a[(j, i)] = z.conj();
            }
        }
        let z = Complex64::new(rng.gaussian(), 0.3 + rng.uniform());
        let mut m = a.clone();
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = -m[(i, j)];
            }
            m[(i, i)] += z;
        }
        let Some(f) = crate::numerics::lu::factor(&m) else {
            return false;
        };
        for _ in 0..4 {
            let mut x = crate::numerics::CMat::zeros(n, 1);
            for i in 0..n {
                x[(i, 0)] = Complex64::new(rng.gaussian(), rng.gaussian());
            }
            let y = f.solve(&x);
            let bound = 1.0 / z.im.abs();
            // ||y|| <= bound ||x|| with a sampling tolerance
            if y.frobenius() > bound * x.frobenius() * (1.0 + 1e-10) {
                return false;
            }
        }
    }
    true
}

fn end_to_end() -> bool {
    let n = 32;
    let eigs = match mass_spring_analytic_eigs(n) {
        Ok(e) => e,
        Err(_) => return false,
    };
    let lo = 0.5 * (eigs[n / 2 - 3].sup + eigs[n / 2 - 2].inf);
    let hi = 0.5 * (eigs[n / 2 + 1].sup + eigs[n / 2 + 2].inf);
    let mut cfg = RunConfig::new(
        ProblemSource::MassSpring { n, variance: 0.0 },
        lo,
        hi,
        4,
        2,
        2,
    );
    cfg.gap_mode = GapMode::Auto;
    match run_verification(&cfg) {
        Ok(out) => {
            if out.exit_code != 0 {
                return false;
            }
            let targets = &eigs[n / 2 - 2..n / 2 + 2];
            let mut idx = 0;
            for e in &out.enclosures {
                let Some(iv) = e.interval else { return false };
                for _ in 0..e.cluster_size {
                    if idx >= targets.len() || !iv.contains(targets[idx].midpoint()) {
                        return false;
                    }
                    idx += 1;
                }
            }
            idx == 4
        }
        Err(_) => false,
    }
}
