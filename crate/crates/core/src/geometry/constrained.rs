//! Covariant second derivatives on level sets `{x : c(x) = 0}` of R^n.
//!
//! For a submersion `c` the tangent spaces are `ker c'(x)` and the connection
//! induced by the orthogonal projector onto them can be evaluated without
//! differentiating the projector: once the multiplier `lambda` of the
//! normal-space stationarity system is known, the covariant derivative of
//! `f'` is the Hessian of the Lagrangian `f'' + lambda c''`.

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, LinearSolver};
use crate::scalar::Scalar;

fn gram_lu<T: Scalar>(jac: &DenseMatrix<T>) -> Result<crate::linalg::DenseLu<T>> {
    let gram = jac.mul(&jac.transpose());
    gram.lu_checked().map_err(|e| {
        Error::SingularConstraint(format!(
            "constraint Jacobian ({}x{}) is rank deficient: {e}",
            jac.rows(),
            jac.cols()
        ))
    })
}

/// Multiplier `lambda` with `(f' + lambda c') w = 0` for all `w` in
/// `(ker c')^perp`, i.e. `lambda = -(J J^T)^{-1} J grad_f`.
pub fn lagrange_multiplier<T: Scalar>(grad_f: &[T], jac: &DenseMatrix<T>) -> Result<Vec<T>> {
    if grad_f.len() != jac.cols() {
        return Err(Error::DimensionMismatch(format!(
            "gradient of length {} against a Jacobian with {} columns",
            grad_f.len(),
            jac.cols()
        )));
    }
    let lu = gram_lu(jac)?;
    let rhs = jac.mul_vec(grad_f);
    Ok(lu.solve(&rhs).into_iter().map(|x| -x).collect())
}

/// Applies the Hessian of the Lagrangian, `f''(x) dx + sum_i lambda_i c_i''(x) dx`,
/// returned as a covector on R^n. Its restriction to `ker c'(x)` is the
/// covariant derivative of `f'` along `dx`.
pub fn constrained_hessian_apply<T: Scalar>(
    hess_f: &DenseMatrix<T>,
    jac: &DenseMatrix<T>,
    constraint_hessians: &[DenseMatrix<T>],
    lambda: &[T],
    dx: &[T],
) -> Result<Vec<T>> {
    let n = hess_f.cols();
    if hess_f.rows() != n
        || jac.cols() != n
        || dx.len() != n
        || constraint_hessians.len() != jac.rows()
        || lambda.len() != jac.rows()
        || constraint_hessians
            .iter()
            .any(|h| h.rows() != n || h.cols() != n)
    {
        return Err(Error::DimensionMismatch(
            "inconsistent sizes in constrained Hessian data".into(),
        ));
    }
    // uniqueness of the multiplier
    gram_lu(jac)?;

    let mut out = hess_f.mul_vec(dx);
    for (h, &l) in constraint_hessians.iter().zip(lambda) {
        for (o, v) in out.iter_mut().zip(h.mul_vec(dx)) {
            *o += l * v;
        }
    }
    Ok(out)
}
