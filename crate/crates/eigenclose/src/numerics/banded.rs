//! Banded complex LU with partial pivoting (LAPACK gbtrf/gbtrs scheme).
//!
//! Storage has `2*kl + ku + 1` band rows per column; partial pivoting fills
//! the upper bandwidth up to `kl + ku`. Multipliers stay in factorization
//! order, so the forward solve applies row interchanges interleaved, exactly
//! as LAPACK's banded solver does.

use num_complex::Complex64;

pub struct BandedLu {
    n: usize,
    kl: usize,
    kv: usize, // kl + ku
    ab: Vec<Complex64>,
    ldab: usize,
    piv: Vec<usize>,
}

pub struct BandedBuilder {
    n: usize,
    kl: usize,
    ku: usize,
    kv: usize,
    ab: Vec<Complex64>,
    ldab: usize,
}

impl BandedBuilder {
    pub fn new(n: usize, kl: usize, ku: usize) -> BandedBuilder {
        let kv = kl + ku;
        let ldab = 2 * kl + ku + 1;
        BandedBuilder {
            n,
            kl,
            ku,
            kv,
            ab: vec![Complex64::new(0.0, 0.0); ldab * n],
            ldab,
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        debug_assert!(i < self.n && j < self.n);
        debug_assert!(j <= i + self.ku && i <= j + self.kl, "entry outside band");
        let r = self.kv + i - j;
        self.ab[r * self.n + j] = v;
    }

    pub fn factor(self) -> Option<BandedLu> {
        let (n, kl, kv, ldab) = (self.n, self.kl, self.kv, self.ldab);
        let mut ab = self.ab;
        let mut piv = vec![0usize; n];
        let mut ju = 0usize;
        let at = |r: usize, c: usize| r * n + c;
        for j in 0..n {
            let km = kl.min(n - 1 - j);
            // pivot search in rows j..=j+km of column j
            let mut jp = 0usize;
            let mut best = ab[at(kv, j)].norm_sqr();
            for i in 1..=km {
                let m = ab[at(kv + i, j)].norm_sqr();
                if m > best {
                    best = m;
                    jp = i;
                }
            }
            piv[j] = j + jp;
            if best == 0.0 || !best.is_finite() {
                return None;
            }
            ju = ju.max((j + self.ku + jp).min(n - 1));
            if jp != 0 {
                for c in j..=ju {
                    let r1 = at(kv + j + jp - c, c);
                    let r2 = at(kv + j - c, c);
                    ab.swap(r1, r2);
                }
            }
            if km > 0 {
                let inv = Complex64::new(1.0, 0.0) / ab[at(kv, j)];
                for i in 1..=km {
                    ab[at(kv + i, j)] *= inv;
                }
                for c in j + 1..=ju {
                    let f = ab[at(kv + j - c, c)];
                    if f.re == 0.0 && f.im == 0.0 {
                        continue;
                    }
                    for i in 1..=km {
                        let t = ab[at(kv + i, j)] * f;
                        ab[at(kv + i + j - c, c)] -= t;
                    }
                }
            }
        }
        Some(BandedLu {
            n,
            kl,
            kv,
            ab,
            ldab,
            piv,
        })
    }
}

impl BandedLu {
    #[inline]
    fn at(&self, r: usize, c: usize) -> Complex64 {
        debug_assert!(r < self.ldab);
        self.ab[r * self.n + c]
    }

    /// Solve in place for each column of `x` (row-major n x ncols).
    pub fn solve_in_place(&self, x: &mut [Complex64], ncols: usize) {
        let n = self.n;
        assert_eq!(x.len(), n * ncols);
        for j in 0..n {
            let l = self.piv[j];
            if l != j {
                for c in 0..ncols {
                    x.swap(j * ncols + c, l * ncols + c);
                }
            }
            let km = self.kl.min(n - 1 - j);
            for i in 1..=km {
                let f = self.at(self.kv + i, j);
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for c in 0..ncols {
                    let t = f * x[j * ncols + c];
                    x[(j + i) * ncols + c] -= t;
                }
            }
        }
        for j in (0..n).rev() {
            let d = Complex64::new(1.0, 0.0) / self.at(self.kv, j);
            for c in 0..ncols {
                x[j * ncols + c] *= d;
            }
            let lo = j.saturating_sub(self.kv);
            for i in lo..j {
                let f = self.at(self.kv + i - j, j);
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for c in 0..ncols {
                    let t = f * x[j * ncols + c];
                    x[i * ncols + c] -= t;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{CMat, lu};

    fn banded_case(n: usize, kl: usize, ku: usize, seed: u64) {
        let mut state = seed;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let mut dense = CMat::zeros(n, n);
        let mut builder = BandedBuilder::new(n, kl, ku);
        for i in 0..n {
            for j in 0..n {
                if j <= i + ku && i <= j + kl {
                    let v = Complex64::new(next(), next());
                    let v = if i == j {
                        v + Complex64::new(4.0, 0.0)
                    } else {
                        v
                    };
                    dense[(i, j)] = v;
                    builder.set(i, j, v);
                }
            }
        }
        let fb = builder.factor().expect("banded factor");
        let mut b = CMat::zeros(n, 2);
        for i in 0..n {
            b[(i, 0)] = Complex64::new(next(), next());
            b[(i, 1)] = Complex64::new(next(), next());
        }
        let mut x = b.data.clone();
        fb.solve_in_place(&mut x, 2);
        let xd = lu::factor(&dense).unwrap().solve(&b);
        let mut err = 0.0f64;
        for (a, c) in x.iter().zip(xd.data.iter()) {
            err = err.max((a - c).norm());
        }
        assert!(err < 1e-10, "n={n} kl={kl} ku={ku} err={err}");
    }

    #[test]
    fn matches_dense_solver() {
        banded_case(12, 1, 1, 3);
        banded_case(12, 2, 2, 5);
        banded_case(30, 1, 1, 7);
        banded_case(25, 3, 2, 11);
        banded_case(9, 0, 0, 13);
    }

    #[test]
    fn needs_pivoting() {
        // zero diagonal forces interchanges
        let n = 6;
        let mut builder = BandedBuilder::new(n, 1, 1);
        let mut dense = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if j <= i + 1 && i <= j + 1 {
                    let v = if i == j {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(1.0 + (i + j) as f64, 0.0)
                    };
                    dense[(i, j)] = v;
                    builder.set(i, j, v);
                }
            }
        }
        let fb = builder.factor().expect("factors with pivoting");
        let b: Vec<Complex64> = (0..n).map(|i| Complex64::new(i as f64, 1.0)).collect();
        let mut x = b.clone();
        fb.solve_in_place(&mut x, 1);
        // residual check
        let mut err = 0.0f64;
        for i in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                s += dense[(i, j)] * x[j];
            }
            err = err.max((s - b[i]).norm());
        }
        assert!(err < 1e-12, "err={err}");
    }
}
