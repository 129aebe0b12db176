//! Dense complex LU with partial pivoting.

use super::CMat;
use num_complex::Complex64;

pub struct DenseLu {
    lu: CMat,
    piv: Vec<usize>,
}

pub fn factor(a: &CMat) -> Option<DenseLu> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut lu = a.clone();
    let mut piv = Vec::with_capacity(n);
    for k in 0..n {
        let mut best = k;
        let mut best_mag = lu[(k, k)].norm_sqr();
        for i in k + 1..n {
            let m = lu[(i, k)].norm_sqr();
            if m > best_mag {
                best_mag = m;
                best = i;
            }
        }
        if best_mag == 0.0 || !best_mag.is_finite() {
            return None;
        }
        piv.push(best);
        if best != k {
            for j in 0..n {
                lu.data.swap(k * n + j, best * n + j);
            }
        }
        let inv = Complex64::new(1.0, 0.0) / lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] * inv;
            lu[(i, k)] = f;
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let t = f * lu[(k, j)];
                lu[(i, j)] -= t;
            }
        }
    }
    Some(DenseLu { lu, piv })
}

impl DenseLu {
    pub fn n(&self) -> usize {
        self.lu.rows
    }

    /// Solve A X = B for all columns of B.
    pub fn solve(&self, b: &CMat) -> CMat {
        let n = self.n();
        assert_eq!(b.rows, n);
        let mut x = b.clone();
        for k in 0..n {
            let p = self.piv[k];
            if p != k {
                for j in 0..x.cols {
                    x.data.swap(k * x.cols + j, p * x.cols + j);
                }
            }
        }
        for k in 0..n {
            for i in k + 1..n {
                let f = self.lu[(i, k)];
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for j in 0..x.cols {
                    let t = f * x[(k, j)];
                    x[(i, j)] -= t;
                }
            }
        }
        for k in (0..n).rev() {
            let d = Complex64::new(1.0, 0.0) / self.lu[(k, k)];
            for j in 0..x.cols {
                x[(k, j)] *= d;
            }
            for i in 0..k {
                let f = self.lu[(i, k)];
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for j in 0..x.cols {
                    let t = f * x[(k, j)];
                    x[(i, j)] -= t;
                }
            }
        }
        x
    }

    pub fn inverse(&self) -> CMat {
        self.solve(&CMat::identity(self.n()))
    }
}
