//! The built-in benchmark problems.

mod curve;
mod geodesic;
mod loads;
mod obstacle;
mod rod;

pub use curve::CurveProblem;
pub use geodesic::{default_geodesic_boundary, geodesic_force_problem, GeodesicForceProblem};
pub use loads::{
    max_plus, max_plus_deriv, winding_force, winding_force_deriv, CapPenalty, NoLoad, NodalLoad,
    WindingField, POLE_THRESHOLD,
};
pub use obstacle::{
    default_obstacle_boundary, obstacle_path_follow, ObstacleProblem, ObstacleStage,
    PathFollowOutcome, PenalizedProblem,
};
pub use rod::{
    rod_initial_guess, LinearForce, NoForce, RodBoundary, RodForce, RodProblem, RodState,
    ROD_BANDWIDTH,
};
