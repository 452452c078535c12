//! Embedded-manifold primitives: the sphere S^2, linear factors R^n, and the
//! projection-induced transports and connections on them.

mod constrained;
mod sphere;
mod vec3;

pub use constrained::{constrained_hessian_apply, lagrange_multiplier};
pub use sphere::{
    retract_sphere, tangent_basis, tangent_project, tangent_project_deriv, transport_vector,
    TangentBasis, UnitVec3, DEGENERATE_NORM,
};
pub use vec3::{Covector3, Vec3};
