//! Dense matrices of complex intervals.

use super::{ComplexInterval, RealInterval, round::*};
use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct IntervalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexInterval>,
    hermitian: bool,
}

impl IntervalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntervalMatrix {
        IntervalMatrix {
            rows,
            cols,
            data: vec![ComplexInterval::ZERO; rows * cols],
            hermitian: false,
        }
    }

    pub fn identity(n: usize) -> IntervalMatrix {
        let mut m = IntervalMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ComplexInterval::ONE;
        }
        m.hermitian = true;
        m
    }

    pub fn from_entries(rows: usize, cols: usize, data: Vec<ComplexInterval>) -> IntervalMatrix {
        assert_eq!(data.len(), rows * cols);
        IntervalMatrix {
            rows,
            cols,
            data,
            hermitian: false,
        }
    }

    pub fn from_points(rows: usize, cols: usize, points: &[Complex64]) -> IntervalMatrix {
        assert_eq!(points.len(), rows * cols);
        IntervalMatrix {
            rows,
            cols,
            data: points.iter().map(|&z| ComplexInterval::point(z)).collect(),
            hermitian: false,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_hermitian_tagged(&self) -> bool {
        self.hermitian
    }

    pub fn is_valid(&self) -> bool {
        self.data.iter().all(|z| z.is_valid())
    }

    pub fn conj_transpose(&self) -> IntervalMatrix {
        let mut out = IntervalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out.hermitian = self.hermitian;
        out
    }

    pub fn add(&self, rhs: &IntervalMatrix) -> Result<IntervalMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("interval matrix add".into()));
        }
        let data = self
            .data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(IntervalMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
            hermitian: false,
        })
    }

    pub fn sub(&self, rhs: &IntervalMatrix) -> Result<IntervalMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("interval matrix sub".into()));
        }
        let data = self
            .data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(IntervalMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
            hermitian: false,
        })
    }

    /// Entrywise-containing product, accumulated in index order so results
    /// are reproducible.
    pub fn matmul(&self, rhs: &IntervalMatrix) -> Result<IntervalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "matmul {}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntervalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..rhs.cols {
                    let p = a.mul(&rhs[(k, j)]);
                    out[(i, j)] = out[(i, j)].add(&p);
                }
            }
        }
        Ok(out)
    }

    pub fn scale_complex(&self, s: &ComplexInterval) -> IntervalMatrix {
        let data = self.data.iter().map(|z| z.mul(s)).collect();
        IntervalMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
            hermitian: false,
        }
    }

    pub fn scale_real(&self, s: &RealInterval) -> IntervalMatrix {
        let data = self.data.iter().map(|z| z.scale_real(s)).collect();
        IntervalMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
            hermitian: false,
        }
    }

    /// Hermitian symmetrization by interval hull: entry (i,j) becomes
    /// `hull(self[i][j], conj(self[j][i]))`, so the tagged invariant
    /// entries(i,j) == conj(entries(j,i)) holds exactly.
    pub fn hermitianize(&self) -> Result<IntervalMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("hermitianize of non-square".into()));
        }
        let n = self.rows;
        let mut out = self.clone();
        for i in 0..n {
            for j in i..n {
                let h = self[(i, j)].hull(&self[(j, i)].conj());
                out[(i, j)] = h;
                out[(j, i)] = h.conj();
            }
        }
        out.hermitian = true;
        Ok(out)
    }

    /// Upper bound on the Frobenius norm over all member matrices.
    pub fn frobenius_norm_upper(&self) -> f64 {
        let mut acc = 0.0f64;
        for z in &self.data {
            acc = add_up(acc, sq_up(z.mag()));
        }
        sqrt_up(acc)
    }

    /// Max row sum of entry magnitude upper bounds (infinity norm bound).
    pub fn inf_norm_upper(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.rows {
            let mut s = 0.0f64;
            for j in 0..self.cols {
                s = add_up(s, self[(i, j)].mag());
            }
            best = best.max(s);
        }
        best
    }

    /// Hermitian-forced midpoint: exact conjugate symmetry, real diagonal.
    pub fn midpoint_hermitian(&self) -> Result<Vec<Complex64>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("midpoint of non-square".into()));
        }
        let n = self.rows;
        let mut mid = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            mid[i * n + i] = Complex64::new(self[(i, i)].re.midpoint(), 0.0);
            for j in i + 1..n {
                let m = self[(i, j)].midpoint();
                mid[i * n + j] = m;
                mid[j * n + i] = m.conj();
            }
        }
        Ok(mid)
    }

    /// Per-entry disc radius around a given midpoint matrix: upper bound on
    /// |member(i,j) - mid(i,j)| over all members.
    pub fn disc_radii_about(&self, mid: &[Complex64]) -> Vec<f64> {
        assert_eq!(mid.len(), self.rows * self.cols);
        self.data
            .iter()
            .zip(mid.iter())
            .map(|(iv, &m)| {
                let rr = iv.re.radius_about(m.re);
                let ri = iv.im.radius_about(m.im);
                sqrt_up(add_up(sq_up(rr), sq_up(ri)))
            })
            .collect()
    }

    pub fn entries(&self) -> &[ComplexInterval] {
        &self.data
    }
}

impl std::ops::Index<(usize, usize)> for IntervalMatrix {
    type Output = ComplexInterval;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &ComplexInterval {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntervalMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexInterval {
        self.hermitian = false;
        &mut self.data[i * self.cols + j]
    }
}
