//! General banded matrices with an LU factorization using partial pivoting.

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, LinearSolver, SystemMatrix, MAX_CONDITION};
use crate::scalar::Scalar;

/// Square banded matrix with `lower_bw` sub- and `upper_bw` super-diagonals.
///
/// Each row stores columns `i - lower_bw ..= i + upper_bw + lower_bw`; the
/// extra `lower_bw` super-diagonals hold the fill created by row interchanges
/// and stay zero until factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix<T> {
    dim: usize,
    lower_bw: usize,
    upper_bw: usize,
    data: Vec<T>,
}

impl<T: Scalar> BandedMatrix<T> {
    pub fn zeros(dim: usize, lower_bw: usize, upper_bw: usize) -> Self {
        let width = 2 * lower_bw + upper_bw + 1;
        BandedMatrix {
            dim,
            lower_bw,
            upper_bw,
            data: vec![T::zero(); dim * width],
        }
    }

    pub fn lower_bw(&self) -> usize {
        self.lower_bw
    }

    pub fn upper_bw(&self) -> usize {
        self.upper_bw
    }

    #[inline]
    fn width(&self) -> usize {
        2 * self.lower_bw + self.upper_bw + 1
    }

    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        i * self.width() + (j + self.lower_bw - i)
    }

    #[inline]
    fn in_band(&self, i: usize, j: usize) -> bool {
        i < self.dim && j < self.dim && j + self.lower_bw >= i && j <= i + self.upper_bw
    }

    /// Entry `(i, j)`; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> T {
        if self.in_band(i, j) {
            self.data[self.offset(i, j)]
        } else {
            T::zero()
        }
    }

    fn col_end(&self, k: usize, extra: usize) -> usize {
        (k + extra).min(self.dim - 1)
    }

    pub fn factorize_banded(&self) -> Result<BandedLu<T>> {
        let n = self.dim;
        let kl = self.lower_bw;
        let reach = kl + self.upper_bw;
        let mut lu = self.clone();
        let mut piv = vec![0usize; n];
        let scale = self.data.iter().fold(T::zero(), |m, a| m.max(a.abs()));
        let (mut pmin, mut pmax) = (T::infinity(), T::zero());
        for k in 0..n {
            let last = lu.col_end(k, kl);
            let mut p = k;
            let mut best = lu.data[lu.offset(k, k)].abs();
            for i in k + 1..=last {
                let v = lu.data[lu.offset(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if !(best > T::epsilon() * scale) || !best.is_finite() {
                return Err(Error::SingularSystem(format!("zero pivot in column {k}")));
            }
            pmin = pmin.min(best);
            pmax = pmax.max(best);
            piv[k] = p;
            let jend = lu.col_end(k, reach);
            if p != k {
                for j in k..=jend {
                    let (a, b) = (lu.offset(k, j), lu.offset(p, j));
                    lu.data.swap(a, b);
                }
            }
            let pivot = lu.data[lu.offset(k, k)];
            for i in k + 1..=last {
                let o = lu.offset(i, k);
                let l = lu.data[o] / pivot;
                lu.data[o] = l;
                if l == T::zero() {
                    continue;
                }
                for j in k + 1..=jend {
                    let u = lu.data[lu.offset(k, j)];
                    let o = lu.offset(i, j);
                    lu.data[o] -= l * u;
                }
            }
        }
        if pmax / pmin > T::lit(MAX_CONDITION) {
            return Err(Error::SingularSystem(format!(
                "pivot ratio {:e} exceeds {MAX_CONDITION:e}",
                (pmax / pmin).to_f64_lossy()
            )));
        }
        Ok(BandedLu { lu, piv })
    }
}

impl<T: Scalar> SystemMatrix<T> for BandedMatrix<T> {
    type Factors = BandedLu<T>;

    fn dim(&self) -> usize {
        self.dim
    }

    fn factorize(&self) -> Result<BandedLu<T>> {
        self.factorize_banded()
    }

    fn matvec(&self, x: &[T]) -> Vec<T> {
        (0..self.dim)
            .map(|i| {
                let lo = i.saturating_sub(self.lower_bw);
                let hi = self.col_end(i, self.upper_bw);
                (lo..=hi).map(|j| self.data[self.offset(i, j)] * x[j]).sum()
            })
            .collect()
    }

    fn scale(&mut self, s: T) {
        for a in &mut self.data {
            *a *= s;
        }
    }

    fn add_entry(&mut self, row: usize, col: usize, value: T) -> Result<()> {
        if !self.in_band(row, col) {
            return Err(Error::DimensionMismatch(format!(
                "entry ({row}, {col}) outside the band (lower {}, upper {}) of a {}x{} matrix",
                self.lower_bw, self.upper_bw, self.dim, self.dim
            )));
        }
        let o = self.offset(row, col);
        self.data[o] += value;
        Ok(())
    }

    fn to_dense(&self) -> DenseMatrix<T> {
        DenseMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j))
    }
}

/// Banded LU factors with the row interchanges of each elimination step.
#[derive(Debug, Clone)]
pub struct BandedLu<T> {
    lu: BandedMatrix<T>,
    piv: Vec<usize>,
}

impl<T: Scalar> LinearSolver<T> for BandedLu<T> {
    fn dim(&self) -> usize {
        self.lu.dim
    }

    fn solve(&self, rhs: &[T]) -> Vec<T> {
        let n = self.lu.dim;
        assert_eq!(rhs.len(), n, "right-hand side length mismatch");
        let kl = self.lu.lower_bw;
        let reach = kl + self.lu.upper_bw;
        let mut x = rhs.to_vec();
        for k in 0..n {
            x.swap(k, self.piv[k]);
            let xk = x[k];
            for i in k + 1..=self.lu.col_end(k, kl) {
                x[i] -= self.lu.data[self.lu.offset(i, k)] * xk;
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..=self.lu.col_end(i, reach) {
                s -= self.lu.data[self.lu.offset(i, j)] * x[j];
            }
            x[i] = s / self.lu.data[self.lu.offset(i, i)];
        }
        x
    }
}

/// Returns `xi` with `A xi + b = 0`.
pub fn solve_banded<T: Scalar>(a: &BandedMatrix<T>, b: &[T]) -> Result<Vec<T>> {
    if b.len() != a.dim {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a system of dimension {}",
            b.len(),
            a.dim
        )));
    }
    let neg: Vec<T> = b.iter().map(|&v| -v).collect();
    Ok(a.factorize_banded()?.solve(&neg))
}
