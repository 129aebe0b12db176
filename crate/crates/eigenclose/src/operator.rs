//! Exact-entry Hermitian operators and the scaled pencil built from a pair
//! of them.
//!
//! Entries are exact binary64 complex values; Hermitian symmetry is
//! validated at construction, never repaired silently. Storage is CSR with
//! sorted, duplicate-free column indices, which covers diagonal, banded and
//! dense matrices alike.

use crate::error::{Error, Result};
use crate::interval::{ComplexInterval, IntervalMatrix, RealInterval, round::*};
use crate::numerics::CMat;
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct HermitianOperator {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<Complex64>,
}

impl HermitianOperator {
    /// Build from triplets (row, col, value). Requires every stored entry to
    /// have its exact conjugate mirror present (or be diagonal with zero
    /// imaginary part); rejects NaN/Inf, duplicates and out-of-range indices.
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, Complex64)]) -> Result<HermitianOperator> {
        let mut entries: Vec<(usize, usize, Complex64)> = Vec::with_capacity(triplets.len());
        for &(i, j, v) in triplets {
            if i >= n || j >= n {
                return Err(Error::InvalidMatrix(format!("index ({i},{j}) out of range")));
            }
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::InvalidMatrix(format!("non-finite entry at ({i},{j})")));
            }
            if v.re == 0.0 && v.im == 0.0 {
                continue;
            }
            entries.push((i, j, v));
        }
        entries.sort_by_key(|&(i, j, _)| (i, j));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(Error::InvalidMatrix(format!(
                    "duplicate entry at ({}, {})",
                    w[0].0, w[0].1
                )));
            }
        }

        let mut row_ptr = vec![0usize; n + 1];
        for &(i, _, _) in &entries {
            row_ptr[i + 1] += 1;
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        let col_idx: Vec<usize> = entries.iter().map(|e| e.1).collect();
        let vals: Vec<Complex64> = entries.iter().map(|e| e.2).collect();
        let op = HermitianOperator {
            n,
            row_ptr,
            col_idx,
            vals,
        };
        op.validate_hermitian()?;
        Ok(op)
    }

    pub fn from_dense(n: usize, data: &[Complex64]) -> Result<HermitianOperator> {
        assert_eq!(data.len(), n * n);
        let mut triplets = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = data[i * n + j];
                if v.re != 0.0 || v.im != 0.0 {
                    triplets.push((i, j, v));
                }
            }
        }
        HermitianOperator::from_triplets(n, &triplets)
    }

    pub fn diagonal(diag: &[f64]) -> Result<HermitianOperator> {
        let triplets: Vec<(usize, usize, Complex64)> = diag
            .iter()
            .enumerate()
            .map(|(i, &d)| (i, i, Complex64::new(d, 0.0)))
            .collect();
        HermitianOperator::from_triplets(diag.len(), &triplets)
    }

    fn validate_hermitian(&self) -> Result<()> {
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                let j = self.col_idx[k];
                let v = self.vals[k];
                if i == j {
                    if v.im != 0.0 {
                        return Err(Error::InvalidMatrix(format!(
                            "diagonal entry ({i},{i}) has nonzero imaginary part"
                        )));
                    }
                    continue;
                }
                let mirror = self.get(j, i);
                if mirror != v.conj() {
                    return Err(Error::InvalidMatrix(format!(
                        "entries ({i},{j}) and ({j},{i}) are not exact conjugates"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let lo = self.row_ptr[i];
        let hi = self.row_ptr[i + 1];
        match self.col_idx[lo..hi].binary_search(&j) {
            Ok(k) => self.vals[lo + k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn row(&self, i: usize) -> (&[usize], &[Complex64]) {
        let lo = self.row_ptr[i];
        let hi = self.row_ptr[i + 1];
        (&self.col_idx[lo..hi], &self.vals[lo..hi])
    }

    pub fn bandwidth(&self) -> usize {
        let mut bw = 0usize;
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                bw = bw.max(self.col_idx[k].abs_diff(i));
            }
        }
        bw
    }

    pub fn is_diagonal(&self) -> bool {
        self.bandwidth() == 0
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// Iterate all stored entries.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.n).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals.iter()).map(move |(&j, &v)| (i, j, v))
        })
    }

    pub fn to_cmat(&self) -> CMat {
        let mut m = CMat::zeros(self.n, self.n);
        for (i, j, v) in self.triplets() {
            m[(i, j)] = v;
        }
        m
    }

    pub fn to_interval_matrix(&self) -> IntervalMatrix {
        let mut m = IntervalMatrix::zeros(self.n, self.n);
        for (i, j, v) in self.triplets() {
            m[(i, j)] = ComplexInterval::point(v);
        }
        m.hermitianize().expect("square by construction")
    }

    /// Floating matrix-matrix product self * X.
    pub fn matmat(&self, x: &CMat) -> CMat {
        assert_eq!(x.rows, self.n);
        let mut out = CMat::zeros(self.n, x.cols);
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals.iter()) {
                for c in 0..x.cols {
                    out[(i, c)] += v * x[(j, c)];
                }
            }
        }
        out
    }

    /// Rigorous interval enclosure of self * X for an exact X.
    pub fn matmat_interval(&self, x: &CMat) -> IntervalMatrix {
        assert_eq!(x.rows, self.n);
        let mut out = IntervalMatrix::zeros(self.n, x.cols);
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            for c in 0..x.cols {
                let mut acc = ComplexInterval::ZERO;
                for (&j, &v) in cols.iter().zip(vals.iter()) {
                    let p = mul_point(v, x[(j, c)]);
                    acc = acc.add(&p);
                }
                out[(i, c)] = acc;
            }
        }
        out
    }

    pub fn inf_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.n {
            let (_, vals) = self.row(i);
            let s: f64 = vals.iter().map(|v| v.norm()).sum();
            best = best.max(s);
        }
        best
    }
}

/// Enclosure of the exact complex product of two binary64 complex scalars.
pub fn mul_point(a: Complex64, b: Complex64) -> ComplexInterval {
    let re = RealInterval {
        inf: add_down(mul_down(a.re, b.re), -mul_up(a.im, b.im)),
        sup: add_up(mul_up(a.re, b.re), -mul_down(a.im, b.im)),
    };
    let im = RealInterval {
        inf: add_down(mul_down(a.re, b.im), mul_down(a.im, b.re)),
        sup: add_up(mul_up(a.re, b.im), mul_up(a.im, b.re)),
    };
    ComplexInterval { re, im }
}

/// The pencil (z B - A') with A' = (A - gamma B) / rho, in scaled coordinates
/// where the target window maps to [-1, 1]. Holds a merged sparsity pattern
/// of A and B so per-node coefficients can be formed on the fly.
pub struct ScaledPencil<'a> {
    pub a: &'a HermitianOperator,
    pub b: &'a HermitianOperator,
    pub gamma: RealInterval,
    pub rho: RealInterval,
    pub gamma_mid: f64,
    pub rho_mid: f64,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    pairs: Vec<(Complex64, Complex64)>, // (a_ij, b_ij)
    bandwidth: usize,
}

impl<'a> ScaledPencil<'a> {
    pub fn new(
        a: &'a HermitianOperator,
        b: &'a HermitianOperator,
        window_lo: f64,
        window_hi: f64,
    ) -> Result<ScaledPencil<'a>> {
        if a.n() != b.n() {
            return Err(Error::DimensionMismatch(format!(
                "pencil dimensions {} vs {}",
                a.n(),
                b.n()
            )));
        }
        if !(window_lo < window_hi) || !window_lo.is_finite() || !window_hi.is_finite() {
            return Err(Error::Config(format!(
                "window [{window_lo}, {window_hi}] is not a proper interval"
            )));
        }
        let lo = RealInterval::point(window_lo);
        let hi = RealInterval::point(window_hi);
        let gamma = (lo.add(&hi)).scale(0.5);
        let rho = (hi.sub(&lo)).scale(0.5);
        debug_assert!(rho.inf > 0.0);

        let n = a.n();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::new();
        let mut pairs = Vec::new();
        let mut bandwidth = 0usize;
        row_ptr.push(0);
        for i in 0..n {
            let (ac, av) = a.row(i);
            let (bc, bv) = b.row(i);
            let (mut ka, mut kb) = (0usize, 0usize);
            while ka < ac.len() || kb < bc.len() {
                let ja = ac.get(ka).copied().unwrap_or(usize::MAX);
                let jb = bc.get(kb).copied().unwrap_or(usize::MAX);
                let (j, aval, bval) = if ja < jb {
                    let t = (ja, av[ka], Complex64::new(0.0, 0.0));
                    ka += 1;
                    t
                } else if jb < ja {
                    let t = (jb, Complex64::new(0.0, 0.0), bv[kb]);
                    kb += 1;
                    t
                } else {
                    let t = (ja, av[ka], bv[kb]);
                    ka += 1;
                    kb += 1;
                    t
                };
                bandwidth = bandwidth.max(j.abs_diff(i));
                col_idx.push(j);
                pairs.push((aval, bval));
            }
            row_ptr.push(col_idx.len());
        }

        Ok(ScaledPencil {
            a,
            b,
            gamma_mid: gamma.midpoint(),
            rho_mid: rho.midpoint(),
            gamma,
            rho,
            row_ptr,
            col_idx,
            pairs,
            bandwidth,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.a.n()
    }

    #[inline]
    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn merged_row(&self, i: usize) -> (&[usize], &[(Complex64, Complex64)]) {
        let lo = self.row_ptr[i];
        let hi = self.row_ptr[i + 1];
        (&self.col_idx[lo..hi], &self.pairs[lo..hi])
    }

    /// Interval enclosure of the scaled entry a'_ij = (a_ij - gamma b_ij)/rho.
    pub fn scaled_entry(&self, aval: Complex64, bval: Complex64) -> ComplexInterval {
        let a_iv = ComplexInterval::point(aval);
        let gb = ComplexInterval::point(bval).scale_real(&self.gamma);
        let num = a_iv.sub(&gb);
        ComplexInterval {
            re: num.re.div(&self.rho).expect("rho > 0"),
            im: num.im.div(&self.rho).expect("rho > 0"),
        }
    }

    /// Midpoint value of the scaled entry.
    pub fn scaled_entry_mid(&self, aval: Complex64, bval: Complex64) -> Complex64 {
        (aval - bval * self.gamma_mid) / self.rho_mid
    }

    /// Interval enclosure of the node coefficient z b_ij - a'_ij.
    pub fn coeff_entry(&self, z: &ComplexInterval, aval: Complex64, bval: Complex64) -> ComplexInterval {
        let zb = z.mul(&ComplexInterval::point(bval));
        zb.sub(&self.scaled_entry(aval, bval))
    }

    /// Midpoint coefficient for the numerical factorization.
    pub fn coeff_entry_mid(&self, z_mid: Complex64, aval: Complex64, bval: Complex64) -> Complex64 {
        z_mid * bval - self.scaled_entry_mid(aval, bval)
    }

    /// Dense interval enclosure of the scaled matrix A'.
    pub fn dense_scaled_interval(&self) -> IntervalMatrix {
        let n = self.n();
        let mut m = IntervalMatrix::zeros(n, n);
        for i in 0..n {
            let (cols, pairs) = self.merged_row(i);
            for (&j, &(av, bv)) in cols.iter().zip(pairs.iter()) {
                m[(i, j)] = self.scaled_entry(av, bv);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermitian_validation() {
        // valid 2x2
        let ok = HermitianOperator::from_triplets(
            2,
            &[
                (0, 0, c(1.0, 0.0)),
                (0, 1, c(0.5, 0.25)),
                (1, 0, c(0.5, -0.25)),
                (1, 1, c(2.0, 0.0)),
            ],
        );
        assert!(ok.is_ok());

        // conjugate mismatch
        let bad = HermitianOperator::from_triplets(
            2,
            &[(0, 1, c(0.5, 0.25)), (1, 0, c(0.5, 0.25))],
        );
        assert!(bad.is_err());

        // imaginary diagonal
        let bad = HermitianOperator::from_triplets(1, &[(0, 0, c(1.0, 0.1))]);
        assert!(bad.is_err());
    }

    #[test]
    fn bandwidth_and_get() {
        let op = HermitianOperator::from_triplets(
            4,
            &[
                (0, 0, c(2.0, 0.0)),
                (1, 1, c(2.0, 0.0)),
                (2, 2, c(2.0, 0.0)),
                (3, 3, c(2.0, 0.0)),
                (0, 1, c(-1.0, 0.0)),
                (1, 0, c(-1.0, 0.0)),
                (2, 3, c(-1.0, 0.0)),
                (3, 2, c(-1.0, 0.0)),
            ],
        )
        .unwrap();
        assert_eq!(op.bandwidth(), 1);
        assert_eq!(op.get(0, 1), c(-1.0, 0.0));
        assert_eq!(op.get(0, 2), c(0.0, 0.0));
        assert!(!op.is_diagonal());
    }

    #[test]
    fn scaled_pencil_identity_window() {
        // window [-1, 1] leaves A' = A exactly
        let a = HermitianOperator::diagonal(&[0.25, -0.5]).unwrap();
        let b = HermitianOperator::diagonal(&[1.0, 1.0]).unwrap();
        let p = ScaledPencil::new(&a, &b, -1.0, 1.0).unwrap();
        assert_eq!(p.gamma, RealInterval::ZERO);
        assert_eq!(p.rho, RealInterval::ONE);
        let e = p.scaled_entry(c(0.25, 0.0), c(1.0, 0.0));
        assert_eq!(e.re, RealInterval::point(0.25));
        assert_eq!(e.im, RealInterval::ZERO);
    }

    #[test]
    fn scaled_pencil_shifts_to_zero() {
        // A = 2I, B = I, window [1,3] -> A' ~ 0
        let a = HermitianOperator::diagonal(&[2.0, 2.0]).unwrap();
        let b = HermitianOperator::diagonal(&[1.0, 1.0]).unwrap();
        let p = ScaledPencil::new(&a, &b, 1.0, 3.0).unwrap();
        let e = p.scaled_entry(c(2.0, 0.0), c(1.0, 0.0));
        assert!(e.re.contains(0.0) && e.re.width() < 1e-14);
    }

    #[test]
    fn interval_matmat_contains_exact() {
        let b = HermitianOperator::from_triplets(
            2,
            &[
                (0, 0, c(1.5, 0.0)),
                (0, 1, c(0.0, 1.0)),
                (1, 0, c(0.0, -1.0)),
                (1, 1, c(0.5, 0.0)),
            ],
        )
        .unwrap();
        let mut v = CMat::zeros(2, 1);
        v[(0, 0)] = c(0.1, 0.0);
        v[(1, 0)] = c(0.2, 0.0);
        let t = b.matmat_interval(&v);
        // exact values: row0 = 1.5*0.1 + i*0.2 ; row1 = -i*0.1 + 0.5*0.2
        assert!(t[(0, 0)].re.contains(0.15000000000000002) || t[(0, 0)].re.contains(0.15));
        assert!(t[(1, 0)].im.contains(-0.1));
    }
}
