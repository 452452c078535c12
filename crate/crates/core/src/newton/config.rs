use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Step-size strategy of the Newton driver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Damping {
    /// Affine covariant damping driven by the contraction estimate theta.
    AffineCovariant,
    /// Plain Newton: every step is taken with alpha = 1. Theta is still
    /// measured and recorded.
    Undamped,
}

/// Parameters of the damped Newton method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonConfig<T> {
    /// Convergence threshold on the norm of the Newton step.
    pub tol: T,
    /// Desired contraction used to predict the next damping factor.
    pub theta_des: T,
    /// Largest contraction for which a trial step is accepted.
    pub theta_acc: T,
    /// Damping factor of the very first trial.
    pub alpha0: T,
    /// The method gives up once the damping factor drops below this value.
    pub alpha_fail: T,
    pub max_outer: usize,
    pub max_inner: usize,
    pub damping: Damping,
}

impl<T: Scalar> Default for NewtonConfig<T> {
    fn default() -> Self {
        NewtonConfig {
            tol: T::lit(1e-10),
            theta_des: T::lit(0.5),
            theta_acc: T::lit(0.9),
            alpha0: T::one(),
            alpha_fail: T::lit(1e-8),
            max_outer: 50,
            max_inner: 20,
            damping: Damping::AffineCovariant,
        }
    }
}

impl<T: Scalar> NewtonConfig<T> {
    /// The undamped method with otherwise default settings.
    pub fn undamped() -> Self {
        NewtonConfig {
            damping: Damping::Undamped,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.tol > T::zero()) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if self.max_outer == 0 || self.max_inner == 0 {
            return bad("iteration limits must be at least 1".into());
        }
        if self.damping == Damping::Undamped {
            return Ok(());
        }
        if !(T::zero() < self.theta_des
            && self.theta_des < self.theta_acc
            && self.theta_acc < T::one())
        {
            return bad(format!(
                "need 0 < theta_des < theta_acc < 1, got theta_des = {}, theta_acc = {}",
                self.theta_des, self.theta_acc
            ));
        }
        if !(T::zero() < self.alpha_fail
            && self.alpha_fail < self.alpha0
            && self.alpha0 <= T::one())
        {
            return bad(format!(
                "need 0 < alpha_fail < alpha0 <= 1, got alpha_fail = {}, alpha0 = {}",
                self.alpha_fail, self.alpha0
            ));
        }
        Ok(())
    }
}
