use crate::error::Result;
use crate::linalg::SystemMatrix;
use crate::newton::config::{Damping, NewtonConfig};
use crate::newton::ops::{simplified_rhs, solve_negated, update_alpha};
use crate::newton::trace::{InnerTrial, NewtonTrace, OuterRecord, Termination};
use crate::newton::NewtonProblem;
use crate::scalar::{norm_inf, Scalar};

/// Final iterate of a Newton run and its history.
#[derive(Debug, Clone)]
pub struct NewtonOutcome<S, T> {
    pub state: S,
    pub trace: NewtonTrace<T>,
}

/// Affine covariant damped Newton method on a problem with moving fibres.
///
/// Each outer iteration factorizes the assembled operator once. Trial steps
/// `x_+ = R_x(alpha dx)` are judged by the simplified Newton step, obtained
/// from the transported residual at `x_+` with the same factors, through
/// `theta = |dx_bar| / |alpha dx|`. A trial is accepted once
/// `theta <= theta_acc`; the next damping factor is
/// `min(1, alpha theta_des / theta)` either way, so alpha carries over
/// between outer iterations.
///
/// The run converges after a full step with `theta <= 1/4` and
/// `|dx| <= tol`. Once the previous step already qualified on
/// contraction, a Newton step at or below `tol` is taken directly: its
/// simplified step is pure rounding and carries no information.
///
/// With [`Damping::Undamped`] every first trial is accepted at alpha = 1.
pub fn damped_newton<T: Scalar, P: NewtonProblem<T>>(
    problem: &P,
    x0: P::State,
    cfg: &NewtonConfig<T>,
) -> Result<NewtonOutcome<P::State, T>> {
    cfg.validate()?;
    let undamped = cfg.damping == Damping::Undamped;
    let quarter = T::lit(0.25);
    let mut x = x0;
    let mut alpha = if undamped { T::one() } else { cfg.alpha0 };
    // (alpha, theta) of the last accepted step
    let mut last: Option<(T, T)> = None;
    let mut iterations = Vec::new();

    let finish = |state, iterations, terminated| NewtonOutcome {
        state,
        trace: NewtonTrace {
            iterations,
            terminated,
        },
    };

    for _ in 0..cfg.max_outer {
        let (a, b) = problem.assemble(&x)?;
        let residual_norm = norm_inf(&b);
        let factors = a.factorize()?;
        let dx = solve_negated(&factors, &b);
        let norm_dx = problem.norm(&x, &dx);

        if norm_dx == T::zero() {
            iterations.push(OuterRecord {
                norm_dx,
                residual_norm,
                accepted_alpha: Some(T::one()),
                trials: Vec::new(),
            });
            return Ok(finish(x, iterations, Termination::Converged));
        }

        let qualified =
            last.is_none_or(|(a_prev, th_prev)| a_prev == T::one() && th_prev <= quarter);
        if norm_dx <= cfg.tol && alpha == T::one() && qualified {
            let x_next = problem.retract(&x, &dx, T::one())?;
            iterations.push(OuterRecord {
                norm_dx,
                residual_norm,
                accepted_alpha: Some(T::one()),
                trials: Vec::new(),
            });
            return Ok(finish(x_next, iterations, Termination::Converged));
        }

        let mut trials = Vec::new();
        let mut accepted = None;
        for _ in 0..cfg.max_inner {
            let x_trial = problem.retract(&x, &dx, alpha)?;
            let r_trans = problem.transported_residual(&x, &x_trial)?;
            let rhs = simplified_rhs(&r_trans, &b, alpha);
            let dx_bar = solve_negated(&factors, &rhs);
            let theta = problem.norm(&x, &dx_bar) / (alpha * norm_dx);
            trials.push(InnerTrial { alpha, theta });

            if undamped {
                accepted = Some((x_trial, alpha, theta));
                break;
            }
            let next_alpha = if theta > T::zero() {
                update_alpha(alpha, theta, cfg.theta_des)
            } else {
                T::one()
            };
            if theta <= cfg.theta_acc {
                accepted = Some((x_trial, alpha, theta));
                alpha = next_alpha;
                break;
            }
            alpha = next_alpha;
            if alpha < cfg.alpha_fail {
                break;
            }
        }

        let Some((x_next, used_alpha, theta)) = accepted else {
            iterations.push(OuterRecord {
                norm_dx,
                residual_norm,
                accepted_alpha: None,
                trials,
            });
            return Ok(finish(x, iterations, Termination::DampingFailed));
        };
        iterations.push(OuterRecord {
            norm_dx,
            residual_norm,
            accepted_alpha: Some(used_alpha),
            trials,
        });
        x = x_next;
        if used_alpha == T::one() && theta <= quarter && norm_dx <= cfg.tol {
            return Ok(finish(x, iterations, Termination::Converged));
        }
        last = Some((used_alpha, theta));
    }
    Ok(finish(x, iterations, Termination::MaxIterations))
}
