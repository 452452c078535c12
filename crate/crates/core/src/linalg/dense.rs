use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::linalg::{LinearSolver, SystemMatrix};
use crate::scalar::Scalar;

/// Reciprocal condition threshold shared by the direct solvers.
pub const MAX_CONDITION: f64 = 1e14;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        DenseMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, s: T) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, -T::one());
        out
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `self^T x`.
    pub fn tr_mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![T::zero(); self.cols];
        for (i, &xi) in x.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += a * xi;
            }
        }
        out
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> T {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|a| a.abs()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> T {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].abs()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, a| m.max(a.abs()))
    }

    /// LU factorization with partial pivoting.
    pub fn lu(&self) -> Result<DenseLu<T>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "LU of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = self.max_abs();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].abs().partial_cmp(&a[(j, k)].abs()).unwrap())
                .unwrap();
            let piv = a[(p, k)];
            if !(piv.abs() > T::epsilon() * scale) || !piv.is_finite() {
                return Err(Error::SingularSystem(format!("zero pivot in column {k}")));
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    a.data.swap(p * n + j, k * n + j);
                }
            }
            for i in k + 1..n {
                let l = a[(i, k)] / piv;
                a[(i, k)] = l;
                if l != T::zero() {
                    for j in k + 1..n {
                        let u = a[(k, j)];
                        a[(i, j)] -= l * u;
                    }
                }
            }
        }
        Ok(DenseLu { lu: a, perm })
    }

    /// LU factorization that additionally rejects matrices whose 1-norm
    /// condition number exceeds [`MAX_CONDITION`].
    pub fn lu_checked(&self) -> Result<DenseLu<T>> {
        let lu = self.lu()?;
        let inv = lu.inverse();
        let cond = self.norm_one() * inv.norm_one();
        if !(cond <= T::lit(MAX_CONDITION)) {
            return Err(Error::SingularSystem(format!(
                "condition estimate {:e} exceeds {MAX_CONDITION:e}",
                cond.to_f64_lossy()
            )));
        }
        Ok(lu)
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Packed `PA = LU` factors.
#[derive(Debug, Clone)]
pub struct DenseLu<T> {
    lu: DenseMatrix<T>,
    perm: Vec<usize>,
}

impl<T: Scalar> DenseLu<T> {
    pub fn solve_in_place(&self, x: &mut [T]) {
        let n = self.lu.rows;
        let b: Vec<T> = self.perm.iter().map(|&p| x[p]).collect();
        x.copy_from_slice(&b);
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, b: &DenseMatrix<T>) -> DenseMatrix<T> {
        let n = self.lu.rows;
        let mut out = DenseMatrix::zeros(n, b.cols);
        let mut col = vec![T::zero(); n];
        for j in 0..b.cols {
            for i in 0..n {
                col[i] = b[(i, j)];
            }
            self.solve_in_place(&mut col);
            for i in 0..n {
                out[(i, j)] = col[i];
            }
        }
        out
    }

    pub fn inverse(&self) -> DenseMatrix<T> {
        self.solve_matrix(&DenseMatrix::identity(self.lu.rows))
    }
}

impl<T: Scalar> LinearSolver<T> for DenseLu<T> {
    fn dim(&self) -> usize {
        self.lu.rows
    }

    fn solve(&self, rhs: &[T]) -> Vec<T> {
        let mut x = rhs.to_vec();
        self.solve_in_place(&mut x);
        x
    }
}

impl<T: Scalar> SystemMatrix<T> for DenseMatrix<T> {
    type Factors = DenseLu<T>;

    fn dim(&self) -> usize {
        self.rows
    }

    fn factorize(&self) -> Result<DenseLu<T>> {
        self.lu_checked()
    }

    fn matvec(&self, x: &[T]) -> Vec<T> {
        self.mul_vec(x)
    }

    fn scale(&mut self, s: T) {
        for a in &mut self.data {
            *a *= s;
        }
    }

    fn add_entry(&mut self, row: usize, col: usize, value: T) -> Result<()> {
        if row >= self.rows || col >= self.cols {
            return Err(Error::DimensionMismatch(format!(
                "entry ({row}, {col}) outside a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        self[(row, col)] += value;
        Ok(())
    }

    fn to_dense(&self) -> DenseMatrix<T> {
        self.clone()
    }
}
