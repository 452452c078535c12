//! Element loop over the intervals of a 1-D grid.

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, SystemMatrix};
use crate::scalar::Scalar;

/// Contribution of one interval to the global residual.
///
/// `dofs[k]` is the global index of local dof `k`, or `None` for dofs of
/// eliminated boundary nodes.
#[derive(Debug, Clone)]
pub struct LocalVector<T> {
    pub dofs: Vec<Option<usize>>,
    pub values: Vec<T>,
}

/// Contribution of one interval to the global matrix; rows are test
/// functions, columns trial directions, both indexed like `dofs`.
#[derive(Debug, Clone)]
pub struct LocalMatrix<T> {
    pub dofs: Vec<Option<usize>>,
    pub values: DenseMatrix<T>,
}

/// Problem-local element kernels.
pub trait IntervalKernel<T: Scalar> {
    fn n_intervals(&self) -> usize;

    fn local_residual(&self, interval: usize) -> Result<LocalVector<T>>;

    fn local_jacobian(&self, interval: usize) -> Result<LocalMatrix<T>>;
}

fn check_dofs(dofs: &[Option<usize>], len: usize, dim: usize, interval: usize) -> Result<()> {
    if dofs.len() != len {
        return Err(Error::DimensionMismatch(format!(
            "interval {interval}: {} local values for {} dofs",
            len,
            dofs.len()
        )));
    }
    if let Some(&Some(g)) = dofs.iter().find(|d| matches!(d, Some(g) if *g >= dim)) {
        return Err(Error::DimensionMismatch(format!(
            "interval {interval}: global dof {g} exceeds dimension {dim}"
        )));
    }
    Ok(())
}

/// Sums the local residuals of all intervals into a vector of length `dim`.
pub fn assemble_residual<T: Scalar, K: IntervalKernel<T> + ?Sized>(
    kernel: &K,
    dim: usize,
) -> Result<Vec<T>> {
    let mut b = vec![T::zero(); dim];
    for e in 0..kernel.n_intervals() {
        let local = kernel.local_residual(e)?;
        check_dofs(&local.dofs, local.values.len(), dim, e)?;
        for (d, v) in local.dofs.iter().zip(&local.values) {
            if let Some(g) = d {
                b[*g] += *v;
            }
        }
    }
    Ok(b)
}

/// Scatters the local matrices of all intervals into `matrix`, which must be
/// zero-initialized with a storage pattern covering every coupling.
pub fn assemble_matrix<T: Scalar, K: IntervalKernel<T> + ?Sized, M: SystemMatrix<T>>(
    kernel: &K,
    mut matrix: M,
) -> Result<M> {
    let dim = matrix.dim();
    for e in 0..kernel.n_intervals() {
        let local = kernel.local_jacobian(e)?;
        let n = local.dofs.len();
        if local.values.rows() != n || local.values.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "interval {e}: local matrix {}x{} for {n} dofs",
                local.values.rows(),
                local.values.cols()
            )));
        }
        check_dofs(&local.dofs, n, dim, e)?;
        for (r, dr) in local.dofs.iter().enumerate() {
            let Some(gr) = dr else { continue };
            for (c, dc) in local.dofs.iter().enumerate() {
                let Some(gc) = dc else { continue };
                let v = local.values[(r, c)];
                if v != T::zero() {
                    matrix.add_entry(*gr, *gc, v)?;
                }
            }
        }
    }
    Ok(matrix)
}

/// Residual and matrix in one pass over the kernels.
pub fn assemble<T: Scalar, K: IntervalKernel<T> + ?Sized, M: SystemMatrix<T>>(
    kernel: &K,
    matrix: M,
) -> Result<(M, Vec<T>)> {
    let dim = matrix.dim();
    let a = assemble_matrix(kernel, matrix)?;
    let b = assemble_residual(kernel, dim)?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem1d::BlockTriDiag;

    /// 1-D Laplacian with homogeneous Dirichlet ends, P1 on a unit grid.
    struct Laplace {
        n: usize,
        h: f64,
    }

    impl Laplace {
        fn dofs(&self, e: usize) -> Vec<Option<usize>> {
            let map = |node: usize| (node >= 1 && node <= self.n).then(|| node - 1);
            vec![map(e), map(e + 1)]
        }
    }

    impl IntervalKernel<f64> for Laplace {
        fn n_intervals(&self) -> usize {
            self.n + 1
        }

        fn local_residual(&self, e: usize) -> Result<LocalVector<f64>> {
            // load f = 1
            Ok(LocalVector {
                dofs: self.dofs(e),
                values: vec![-self.h / 2.0, -self.h / 2.0],
            })
        }

        fn local_jacobian(&self, e: usize) -> Result<LocalMatrix<f64>> {
            let k = 1.0 / self.h;
            Ok(LocalMatrix {
                dofs: self.dofs(e),
                values: DenseMatrix::from_rows(&[vec![k, -k], vec![-k, k]]),
            })
        }
    }

    #[test]
    fn laplacian_stencil_and_solution() {
        let n = 9;
        let lap = Laplace {
            n,
            h: 1.0 / (n + 1) as f64,
        };
        let (a, b) = assemble(&lap, BlockTriDiag::zeros(n, 1)).unwrap();
        assert_eq!(a.diagonal[3][(0, 0)], 2.0 / lap.h);
        assert_eq!(a.upper[3][(0, 0)], -1.0 / lap.h);
        let xi = crate::fem1d::solve_block_tridiagonal(&a, &b).unwrap();
        // -u'' = 1, u(0)=u(1)=0: P1 is nodally exact, u = t(1-t)/2
        for (i, u) in xi.iter().enumerate() {
            let t = (i + 1) as f64 * lap.h;
            assert!((u - t * (1.0 - t) / 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn out_of_range_dof_is_a_dimension_error() {
        let lap = Laplace { n: 3, h: 0.25 };
        let err = assemble_residual(&lap, 2).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }
}
