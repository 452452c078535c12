use crate::scalar::Scalar;

/// Why the Newton driver stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Converged,
    DampingFailed,
    MaxIterations,
}

impl Termination {
    pub fn as_str(&self) -> &'static str {
        match self {
            Termination::Converged => "Converged",
            Termination::DampingFailed => "DampingFailed",
            Termination::MaxIterations => "MaxIterations",
        }
    }
}

impl std::fmt::Display for Termination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One trial step `x_+ = R_x(alpha dx)` of the inner loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerTrial<T> {
    pub alpha: T,
    pub theta: T,
}

/// Record of one outer iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct OuterRecord<T> {
    /// Norm of the Newton step at the iterate.
    pub norm_dx: T,
    /// Infinity norm of the residual coefficients at the iterate.
    pub residual_norm: T,
    /// Damping factor of the step that was taken; `None` if every trial
    /// was rejected.
    pub accepted_alpha: Option<T>,
    /// Every inner trial in order. Empty when the step was taken without a
    /// contraction test (zero step, or a step below the tolerance).
    pub trials: Vec<InnerTrial<T>>,
}

impl<T: Scalar> OuterRecord<T> {
    pub fn theta_history(&self) -> Vec<T> {
        self.trials.iter().map(|t| t.theta).collect()
    }

    pub fn inner_count(&self) -> usize {
        self.trials.len()
    }

    /// Theta of the last trial, if any was made.
    pub fn theta_final(&self) -> Option<T> {
        self.trials.last().map(|t| t.theta)
    }
}

/// Per-iteration history of a Newton run.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonTrace<T> {
    pub iterations: Vec<OuterRecord<T>>,
    pub terminated: Termination,
}

impl<T: Scalar> NewtonTrace<T> {
    pub fn outer_count(&self) -> usize {
        self.iterations.len()
    }

    pub fn converged(&self) -> bool {
        self.terminated == Termination::Converged
    }

    pub fn norms(&self) -> Vec<T> {
        self.iterations.iter().map(|r| r.norm_dx).collect()
    }

    pub fn accepted_alphas(&self) -> Vec<T> {
        self.iterations
            .iter()
            .filter_map(|r| r.accepted_alpha)
            .collect()
    }
}
