//! Damped Newton's method for variational equations on embedded manifolds.
//!
//! A variational problem `F(x) = 0` whose residual `F(x)` is a covector on
//! the tangent space at a moving base point is discretized with P1 finite
//! elements and solved by an affine covariant damped Newton method. Test
//! vectors are transported between iterates by orthogonal projection, and the
//! connection term of the Newton operator is the derivative of that
//! projection.
//!
//! The numerical core is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the common double precision types.
//!
//! ```
//! use bundle_newton::{damped_newton, geodesic_force_problem, default_geodesic_boundary};
//! use bundle_newton::NewtonConfigd;
//!
//! let (a, b) = default_geodesic_boundary::<f64>();
//! let problem = geodesic_force_problem(50, a, b, 3.0).unwrap();
//! let start = problem.initial_curve().unwrap();
//! let out = damped_newton(&problem, start, &NewtonConfigd::default()).unwrap();
//! assert!(out.trace.converged());
//! ```

// `!(a > b)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod fem1d;
pub mod geometry;
pub mod linalg;
pub mod newton;
pub mod problems;
pub mod scalar;

pub use error::{Error, Result};
pub use newton::{damped_newton, Damping, NewtonConfig, NewtonOutcome, NewtonProblem, Termination};
pub use problems::{
    default_geodesic_boundary, geodesic_force_problem, obstacle_path_follow, rod_initial_guess,
};
pub use scalar::Scalar;

pub type Vec3d = geometry::Vec3<f64>;
pub type Vec3f = geometry::Vec3<f32>;
pub type UnitVec3d = geometry::UnitVec3<f64>;
pub type UnitVec3f = geometry::UnitVec3<f32>;
pub type Covector3d = geometry::Covector3<f64>;
pub type Covector3f = geometry::Covector3<f32>;
pub type TangentBasisd = geometry::TangentBasis<f64>;
pub type Gridd = fem1d::Grid<f64>;
pub type NodalCurved = fem1d::NodalCurve<f64>;
pub type NodalCurvef = fem1d::NodalCurve<f32>;
pub type NewtonConfigd = newton::NewtonConfig<f64>;
pub type NewtonConfigf = newton::NewtonConfig<f32>;
pub type NewtonTraced = newton::NewtonTrace<f64>;
pub type GeodesicForceProblemd = problems::GeodesicForceProblem<f64>;
pub type ObstacleProblemd = problems::ObstacleProblem<f64>;
pub type RodStated = problems::RodState<f64>;
pub type RodProblemd = problems::RodProblem<f64, problems::NoForce>;
