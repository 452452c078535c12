//! Elastic geodesics in the winding force field.

use crate::error::Result;
use crate::fem1d::Grid;
use crate::geometry::{UnitVec3, Vec3};
use crate::problems::curve::CurveProblem;
use crate::problems::loads::WindingField;
use crate::scalar::Scalar;

pub type GeodesicForceProblem<T> = CurveProblem<T, WindingField<T>>;

/// Default boundary points: almost antipodal, away from both poles.
pub fn default_geodesic_boundary<T: Scalar>() -> (UnitVec3<T>, UnitVec3<T>) {
    let a = T::lit(0.3);
    let b = T::lit(0.2);
    let g0 = Vec3::new(a.sin(), T::zero(), -a.cos());
    let gt = Vec3::new(-a.sin() * b.cos(), a.sin() * b.sin(), a.cos());
    (UnitVec3::new_unchecked(g0), UnitVec3::new_unchecked(gt))
}

/// Geodesic problem on `[0, 1]` with `n` interior nodes.
pub fn geodesic_force_problem<T: Scalar>(
    n: usize,
    gamma0: UnitVec3<T>,
    gamma_t: UnitVec3<T>,
    force_scale: T,
) -> Result<GeodesicForceProblem<T>> {
    CurveProblem::new(
        Grid::new(T::one(), n)?,
        gamma0,
        gamma_t,
        WindingField { scale: force_scale },
    )
}
