//! Newton's method for mappings into dual vector bundles.
//!
//! A problem supplies the residual covector `F(x)` and the operator
//! `Q*_{F(x)} o F'(x)` in coordinates of per-iterate test bases, together with
//! the residual at a new iterate tested against the forward-transported old
//! test vectors. The driver only ever sees coefficient vectors, so the same
//! code runs on products of spheres, linear spaces, and their mixtures.

mod config;
mod driver;
mod ops;
mod trace;

pub use config::{Damping, NewtonConfig};
pub use driver::{damped_newton, NewtonOutcome};
pub use ops::{
    compute_theta, newton_direction, norm_inf_nodal, simplified_rhs, solve_negated, update_alpha,
};
pub use trace::{InnerTrial, NewtonTrace, OuterRecord, Termination};

use crate::error::Result;
use crate::linalg::SystemMatrix;
use crate::scalar::Scalar;

/// Contract between a discretized variational problem and the Newton driver.
pub trait NewtonProblem<T: Scalar> {
    type State: Clone;
    type Matrix: SystemMatrix<T>;

    /// Number of unknown coefficients `M`.
    fn dof_count(&self) -> usize;

    /// `b_k = F(x) phi_k` for the test basis at `x`.
    fn residual(&self, x: &Self::State) -> Result<Vec<T>>;

    /// `A_{kl} = (Q*_{F(x)} o F'(x)) phi_l phi_k`.
    fn jacobian(&self, x: &Self::State) -> Result<Self::Matrix>;

    /// `F(x_new)` tested against the test basis of `old`, transported to
    /// `new`. Must agree with `residual(old)` when `new == old`.
    fn transported_residual(&self, old: &Self::State, new: &Self::State) -> Result<Vec<T>>;

    /// `R_x(alpha sum_k xi_k phi_k)`.
    fn retract(&self, x: &Self::State, xi: &[T], alpha: T) -> Result<Self::State>;

    /// Norm of the tangent vector with coefficients `xi` at `x`.
    fn norm(&self, x: &Self::State, xi: &[T]) -> T;

    fn assemble(&self, x: &Self::State) -> Result<(Self::Matrix, Vec<T>)> {
        Ok((self.jacobian(x)?, self.residual(x)?))
    }
}
