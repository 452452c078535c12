//! Block-tridiagonal matrices and the block Thomas algorithm.

use crate::error::{Error, Result};
use crate::linalg::{DenseLu, DenseMatrix, LinearSolver, SystemMatrix};
use crate::scalar::Scalar;

/// Square block-tridiagonal matrix with `n_blocks` diagonal blocks of size
/// `block_dim`. `lower[i]` is block `(i+1, i)`, `upper[i]` is block `(i, i+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockTriDiag<T> {
    n_blocks: usize,
    block_dim: usize,
    pub diagonal: Vec<DenseMatrix<T>>,
    pub lower: Vec<DenseMatrix<T>>,
    pub upper: Vec<DenseMatrix<T>>,
}

impl<T: Scalar> BlockTriDiag<T> {
    pub fn zeros(n_blocks: usize, block_dim: usize) -> Self {
        let z = DenseMatrix::zeros(block_dim, block_dim);
        let off = n_blocks.saturating_sub(1);
        BlockTriDiag {
            n_blocks,
            block_dim,
            diagonal: vec![z.clone(); n_blocks],
            lower: vec![z.clone(); off],
            upper: vec![z; off],
        }
    }

    pub fn n_blocks(&self) -> usize {
        self.n_blocks
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    /// Block `(bi, bj)` if it lies in the tridiagonal pattern.
    pub fn block(&self, bi: usize, bj: usize) -> Option<&DenseMatrix<T>> {
        if bi == bj {
            self.diagonal.get(bi)
        } else if bi == bj + 1 {
            self.lower.get(bj)
        } else if bj == bi + 1 {
            self.upper.get(bi)
        } else {
            None
        }
    }

    fn block_mut(&mut self, bi: usize, bj: usize) -> Option<&mut DenseMatrix<T>> {
        if bi == bj {
            self.diagonal.get_mut(bi)
        } else if bi == bj + 1 {
            self.lower.get_mut(bj)
        } else if bj == bi + 1 {
            self.upper.get_mut(bi)
        } else {
            None
        }
    }

    /// Forward sweep of the block Thomas algorithm. Each reduced pivot block
    /// is LU factorized with partial pivoting; no pivoting across blocks.
    pub fn factorize_blocks(&self) -> Result<BlockTriDiagLu<T>> {
        let n = self.n_blocks;
        let mut pivots: Vec<DenseLu<T>> = Vec::with_capacity(n);
        let mut coupling: Vec<DenseMatrix<T>> = Vec::with_capacity(n.saturating_sub(1));
        for i in 0..n {
            let mut d = self.diagonal[i].clone();
            if i > 0 {
                d.add_scaled(&self.lower[i - 1].mul(&coupling[i - 1]), -T::one());
            }
            let lu = d.lu_checked().map_err(|e| match e {
                Error::SingularSystem(msg) => {
                    Error::SingularSystem(format!("pivot block {i}: {msg}"))
                }
                other => other,
            })?;
            if i + 1 < n {
                coupling.push(lu.solve_matrix(&self.upper[i]));
            }
            pivots.push(lu);
        }
        Ok(BlockTriDiagLu {
            block_dim: self.block_dim,
            pivots,
            coupling,
            lower: self.lower.clone(),
        })
    }
}

impl<T: Scalar> SystemMatrix<T> for BlockTriDiag<T> {
    type Factors = BlockTriDiagLu<T>;

    fn dim(&self) -> usize {
        self.n_blocks * self.block_dim
    }

    fn factorize(&self) -> Result<BlockTriDiagLu<T>> {
        self.factorize_blocks()
    }

    fn matvec(&self, x: &[T]) -> Vec<T> {
        let m = self.block_dim;
        let mut out = vec![T::zero(); self.dim()];
        for bi in 0..self.n_blocks {
            let lo = bi.saturating_sub(1);
            let hi = (bi + 1).min(self.n_blocks - 1);
            for bj in lo..=hi {
                let b = self.block(bi, bj).unwrap();
                let y = b.mul_vec(&x[bj * m..(bj + 1) * m]);
                for (o, v) in out[bi * m..(bi + 1) * m].iter_mut().zip(y) {
                    *o += v;
                }
            }
        }
        out
    }

    fn scale(&mut self, s: T) {
        for b in self
            .diagonal
            .iter_mut()
            .chain(self.lower.iter_mut())
            .chain(self.upper.iter_mut())
        {
            b.scale(s);
        }
    }

    fn add_entry(&mut self, row: usize, col: usize, value: T) -> Result<()> {
        let m = self.block_dim;
        let (bi, bj) = (row / m, col / m);
        if bi >= self.n_blocks || bj >= self.n_blocks {
            return Err(Error::DimensionMismatch(format!(
                "entry ({row}, {col}) outside a block matrix of dimension {}",
                self.dim()
            )));
        }
        let block = self.block_mut(bi, bj).ok_or_else(|| {
            Error::DimensionMismatch(format!(
                "entry ({row}, {col}) outside the block-tridiagonal pattern"
            ))
        })?;
        block[(row % m, col % m)] += value;
        Ok(())
    }

    fn to_dense(&self) -> DenseMatrix<T> {
        let m = self.block_dim;
        let mut out = DenseMatrix::zeros(self.dim(), self.dim());
        for bi in 0..self.n_blocks {
            for bj in bi.saturating_sub(1)..=(bi + 1).min(self.n_blocks - 1) {
                let b = self.block(bi, bj).unwrap();
                for r in 0..m {
                    for c in 0..m {
                        out[(bi * m + r, bj * m + c)] = b[(r, c)];
                    }
                }
            }
        }
        out
    }
}

/// Factors produced by [`BlockTriDiag::factorize_blocks`]; solving reuses
/// them for any number of right-hand sides.
#[derive(Debug, Clone)]
pub struct BlockTriDiagLu<T> {
    block_dim: usize,
    pivots: Vec<DenseLu<T>>,
    /// `D_i^{-1} U_i` of the reduced pivots.
    coupling: Vec<DenseMatrix<T>>,
    lower: Vec<DenseMatrix<T>>,
}

impl<T: Scalar> LinearSolver<T> for BlockTriDiagLu<T> {
    fn dim(&self) -> usize {
        self.pivots.len() * self.block_dim
    }

    fn solve(&self, rhs: &[T]) -> Vec<T> {
        assert_eq!(rhs.len(), self.dim(), "right-hand side length mismatch");
        let m = self.block_dim;
        let n = self.pivots.len();
        let mut x = rhs.to_vec();
        for i in 0..n {
            if i > 0 {
                let (done, rest) = x.split_at_mut(i * m);
                let prev = &done[(i - 1) * m..];
                let corr = self.lower[i - 1].mul_vec(prev);
                for (xi, c) in rest[..m].iter_mut().zip(corr) {
                    *xi -= c;
                }
            }
            self.pivots[i].solve_in_place(&mut x[i * m..(i + 1) * m]);
        }
        for i in (0..n.saturating_sub(1)).rev() {
            let corr = self.coupling[i].mul_vec(&x[(i + 1) * m..(i + 2) * m]);
            for (xi, c) in x[i * m..(i + 1) * m].iter_mut().zip(corr) {
                *xi -= c;
            }
        }
        x
    }
}

/// Returns `xi` with `A xi + b = 0`.
pub fn solve_block_tridiagonal<T: Scalar>(a: &BlockTriDiag<T>, b: &[T]) -> Result<Vec<T>> {
    if b.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a system of dimension {}",
            b.len(),
            a.dim()
        )));
    }
    let neg: Vec<T> = b.iter().map(|&v| -v).collect();
    Ok(a.factorize_blocks()?.solve(&neg))
}
