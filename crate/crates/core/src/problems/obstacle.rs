//! Geodesics avoiding the polar cap `y3 > 1 - h_ref`, by a quadratic
//! penalty and continuation in the penalty parameter.

use crate::error::{Error, Result};
use crate::fem1d::{Grid, NodalCurve};
use crate::geometry::{UnitVec3, Vec3};
use crate::newton::{damped_newton, NewtonConfig, NewtonTrace, Termination};
use crate::problems::curve::CurveProblem;
use crate::problems::loads::{max_plus, CapPenalty};
use crate::scalar::Scalar;

/// Default boundary points: both at polar angle 1 and azimuthally
/// `pi - 0.3` apart, so the connecting arc rises to `y3 ~ 0.974` and crosses
/// every cap with `h_ref` above 0.03.
pub fn default_obstacle_boundary<T: Scalar>() -> (UnitVec3<T>, UnitVec3<T>) {
    let polar = T::one();
    let az = T::lit(0.3);
    let (s, c) = (polar.sin(), polar.cos());
    let g0 = Vec3::new(s, T::zero(), c);
    let gt = Vec3::new(-s * az.cos(), s * az.sin(), c);
    (UnitVec3::new_unchecked(g0), UnitVec3::new_unchecked(gt))
}

/// Penalized problem for a fixed `p`.
pub type PenalizedProblem<T> = CurveProblem<T, CapPenalty<T>>;

#[derive(Debug, Clone)]
pub struct ObstacleProblem<T> {
    pub grid: Grid<T>,
    pub gamma0: UnitVec3<T>,
    pub gamma_t: UnitVec3<T>,
    pub h_ref: T,
    /// Penalty of the first stage.
    pub p0: T,
    pub p_growth: T,
    pub violation_tol: T,
    pub max_stages: usize,
}

impl<T: Scalar> ObstacleProblem<T> {
    /// Defaults: `p0 = 1`, growth 1.2, violation tolerance 1e-3, at most
    /// 200 stages.
    pub fn new(grid: Grid<T>, gamma0: UnitVec3<T>, gamma_t: UnitVec3<T>, h_ref: T) -> Result<Self> {
        let p = ObstacleProblem {
            grid,
            gamma0,
            gamma_t,
            h_ref,
            p0: T::one(),
            p_growth: T::lit(1.2),
            violation_tol: T::lit(1e-3),
            max_stages: 200,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.h_ref > T::zero() && self.h_ref < T::one()) {
            return bad(format!("h_ref must lie in (0, 1), got {}", self.h_ref));
        }
        if !(self.p0 > T::zero()) || !self.p0.is_finite() {
            return bad(format!("p0 must be positive, got {}", self.p0));
        }
        if !(self.p_growth > T::one()) || !self.p_growth.is_finite() {
            return bad(format!("p_growth must exceed 1, got {}", self.p_growth));
        }
        if !(self.violation_tol > T::zero()) {
            return bad(format!(
                "violation_tol must be positive, got {}",
                self.violation_tol
            ));
        }
        Ok(())
    }

    pub fn penalized(&self, p: T) -> Result<PenalizedProblem<T>> {
        CurveProblem::new(
            self.grid,
            self.gamma0,
            self.gamma_t,
            CapPenalty {
                h_ref: self.h_ref,
                p,
            },
        )
    }

    /// `max_i max(0, y3_i - 1 + h_ref)` over all nodes.
    pub fn violation(&self, curve: &NodalCurve<T>) -> T {
        let cap = CapPenalty {
            h_ref: self.h_ref,
            p: T::one(),
        };
        curve
            .points
            .iter()
            .map(|y| max_plus(cap.constraint(y.as_vec())))
            .fold(T::zero(), T::max)
    }

    pub fn initial_curve(&self) -> Result<NodalCurve<T>> {
        NodalCurve::great_circle(self.grid, &self.gamma0, &self.gamma_t)
    }
}

/// One continuation stage.
#[derive(Debug, Clone)]
pub struct ObstacleStage<T> {
    pub p: T,
    /// Violation of the stage's final curve.
    pub violation: T,
    pub trace: NewtonTrace<T>,
}

#[derive(Debug, Clone)]
pub struct PathFollowOutcome<T> {
    /// Final curve; after a failed stage, the last curve whose stage
    /// converged.
    pub curve: NodalCurve<T>,
    pub stages: Vec<ObstacleStage<T>>,
    /// `Converged` once the violation is within tolerance, otherwise the
    /// termination of the failing stage, or `MaxIterations` when the stage
    /// budget ran out.
    pub terminated: Termination,
    /// Penalty of the last converged stage, 0 if none ran.
    pub final_p: T,
    pub final_violation: T,
    pub diagnostic: Option<String>,
}

/// Solves the penalized problems for `p = p0, p0 g, p0 g^2, ...`, each
/// warm-started from the previous stage, until the violation is within
/// tolerance. A feasible starting curve needs no stage at all.
pub fn obstacle_path_follow<T: Scalar>(
    problem: &ObstacleProblem<T>,
    start: Option<NodalCurve<T>>,
    cfg: &NewtonConfig<T>,
) -> Result<PathFollowOutcome<T>> {
    problem.validate()?;
    cfg.validate()?;
    let mut curve = match start {
        Some(c) => c,
        None => problem.initial_curve()?,
    };
    let mut stages = Vec::new();
    let mut p = problem.p0;
    let mut final_p = T::zero();
    loop {
        let violation = problem.violation(&curve);
        if violation <= problem.violation_tol {
            return Ok(PathFollowOutcome {
                curve,
                stages,
                terminated: Termination::Converged,
                final_p,
                final_violation: violation,
                diagnostic: None,
            });
        }
        if stages.len() >= problem.max_stages {
            return Ok(PathFollowOutcome {
                curve,
                stages,
                terminated: Termination::MaxIterations,
                final_p,
                final_violation: violation,
                diagnostic: Some(format!(
                    "violation {violation:e} after {} stages",
                    problem.max_stages
                )),
            });
        }
        let stage_problem = problem.penalized(p)?;
        let out = damped_newton(&stage_problem, curve.clone(), cfg)?;
        let terminated = out.trace.terminated;
        stages.push(ObstacleStage {
            p,
            violation: problem.violation(&out.state),
            trace: out.trace,
        });
        if terminated != Termination::Converged {
            let n = stages.len();
            return Ok(PathFollowOutcome {
                curve,
                stages,
                terminated,
                final_p,
                final_violation: violation,
                diagnostic: Some(format!("stage {n} with p = {p:e}: {terminated}")),
            });
        }
        curve = out.state;
        final_p = p;
        p *= problem.p_growth;
    }
}
