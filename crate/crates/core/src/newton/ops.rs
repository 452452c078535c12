//! The scalar building blocks of the damping strategy.

use crate::error::{Error, Result};
use crate::geometry::TangentBasis;
use crate::linalg::{LinearSolver, SystemMatrix};
use crate::scalar::Scalar;

/// Solves `A xi + b = 0`.
pub fn newton_direction<T: Scalar, M: SystemMatrix<T>>(a: &M, b: &[T]) -> Result<Vec<T>> {
    if b.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a system of dimension {}",
            b.len(),
            a.dim()
        )));
    }
    let factors = a.factorize()?;
    Ok(solve_negated(&factors, b))
}

/// `xi` with `A xi + b = 0` from precomputed factors of `A`.
pub fn solve_negated<T: Scalar, S: LinearSolver<T>>(factors: &S, b: &[T]) -> Vec<T> {
    let neg: Vec<T> = b.iter().map(|&v| -v).collect();
    factors.solve(&neg)
}

/// Right-hand side of the simplified Newton equation:
/// `r_transported - (1 - alpha) r_old`.
pub fn simplified_rhs<T: Scalar>(r_transported: &[T], r_old: &[T], alpha: T) -> Vec<T> {
    assert_eq!(r_transported.len(), r_old.len(), "residual length mismatch");
    let keep = T::one() - alpha;
    r_transported
        .iter()
        .zip(r_old)
        .map(|(&t, &o)| t - keep * o)
        .collect()
}

/// Contraction estimate `|dx_bar| / |alpha dx|` in the given norm.
pub fn compute_theta<T: Scalar>(
    dx_bar: &[T],
    dx_scaled: &[T],
    norm: impl Fn(&[T]) -> T,
) -> Result<T> {
    let denom = norm(dx_scaled);
    if !(denom > T::zero()) {
        return Err(Error::ZeroStep);
    }
    Ok(norm(dx_bar) / denom)
}

/// `min(1, alpha theta_des / theta)`.
pub fn update_alpha<T: Scalar>(alpha: T, theta: T, theta_des: T) -> T {
    T::one().min(alpha * theta_des / theta)
}

/// Maximum over nodes of the Euclidean norm of the tangent vector
/// `sum_j xi[2i + j] v_{i,j}`.
pub fn norm_inf_nodal<T: Scalar>(xi: &[T], bases: &[TangentBasis<T>]) -> T {
    assert_eq!(xi.len(), 2 * bases.len(), "coefficient length mismatch");
    xi.chunks_exact(2)
        .zip(bases)
        .map(|(c, b)| b.combine(c).norm())
        .fold(T::zero(), T::max)
}
