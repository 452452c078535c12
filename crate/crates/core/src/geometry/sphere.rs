//! The unit sphere S^2 embedded in R^3.
//!
//! Tangent spaces are the planes `y^perp`; the orthogonal projection
//! `P(y) = Id - y <y, .>` induces both the vector transport between tangent
//! planes and, through its derivative, the connection used in assembly.

use crate::error::{Error, Result};
use crate::geometry::vec3::Vec3;
use crate::scalar::Scalar;

/// Threshold on `|y + d|` below which a retraction is rejected.
pub const DEGENERATE_NORM: f64 = 1e-12;

/// A point of S^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVec3<T>(Vec3<T>);

impl<T: Scalar> UnitVec3<T> {
    /// Normalizes `v`; fails when `|v|` is at or below [`DEGENERATE_NORM`].
    pub fn normalize(v: Vec3<T>) -> Result<Self> {
        let n = v.norm();
        if !(n > T::lit(DEGENERATE_NORM)) {
            return Err(Error::DegenerateUpdate {
                norm: n.to_f64_lossy(),
            });
        }
        Ok(UnitVec3(v.scale(T::one() / n)))
    }

    /// Wraps a vector the caller guarantees to be of unit length.
    pub fn new_unchecked(v: Vec3<T>) -> Self {
        UnitVec3(v)
    }

    pub fn from_f64(xs: [f64; 3]) -> Result<Self> {
        Self::normalize(Vec3::from_f64(xs))
    }

    /// Point at polar angle `polar` (from +e3) and azimuth `azimuth`.
    pub fn from_spherical(polar: T, azimuth: T) -> Self {
        let s = polar.sin();
        UnitVec3(Vec3::new(s * azimuth.cos(), s * azimuth.sin(), polar.cos()))
    }

    #[inline]
    pub fn as_vec(&self) -> &Vec3<T> {
        &self.0
    }

    #[inline]
    pub fn into_vec(self) -> Vec3<T> {
        self.0
    }

    #[inline]
    pub fn get(&self, k: usize) -> T {
        self.0[k]
    }
}

/// Orthonormal basis `{v1, v2}` of the tangent plane at `base`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentBasis<T> {
    pub base: UnitVec3<T>,
    pub v1: Vec3<T>,
    pub v2: Vec3<T>,
}

impl<T: Scalar> TangentBasis<T> {
    #[inline]
    pub fn vectors(&self) -> [Vec3<T>; 2] {
        [self.v1, self.v2]
    }

    /// `c[0] v1 + c[1] v2`.
    #[inline]
    pub fn combine(&self, c: &[T]) -> Vec3<T> {
        self.v1 * c[0] + self.v2 * c[1]
    }
}

/// `P(y) h = h - y <y, h>`.
#[inline]
pub fn tangent_project<T: Scalar>(y: &UnitVec3<T>, h: &Vec3<T>) -> Vec3<T> {
    let y = y.as_vec();
    *h - *y * y.dot(h)
}

/// `(P'(y) v) u = -y <v, u> - v <y, u>`.
#[inline]
pub fn tangent_project_deriv<T: Scalar>(y: &UnitVec3<T>, v: &Vec3<T>, u: &Vec3<T>) -> Vec3<T> {
    let yv = y.as_vec();
    -(*yv * v.dot(u)) - *v * yv.dot(u)
}

/// Metric projection retraction `(y + d) / |y + d|`.
pub fn retract_sphere<T: Scalar>(y: &UnitVec3<T>, d: &Vec3<T>) -> Result<UnitVec3<T>> {
    UnitVec3::normalize(*y.as_vec() + *d)
}

/// Transports a tangent vector at `from` into the tangent plane at `to` by
/// orthogonal projection. The result degenerates when `u` is parallel to `to`.
#[inline]
pub fn transport_vector<T: Scalar>(from: &UnitVec3<T>, to: &UnitVec3<T>, u: &Vec3<T>) -> Vec3<T> {
    debug_assert!(
        from.as_vec().dot(u).abs() <= T::lit(1e-6) * (T::one() + u.norm()),
        "transported vector is not tangent at the source point"
    );
    tangent_project(to, u)
}

/// Deterministic orthonormal tangent basis: the axis least aligned with `y`,
/// orthogonalized against `y`, and its completion by the cross product.
pub fn tangent_basis<T: Scalar>(y: &UnitVec3<T>) -> TangentBasis<T> {
    let yv = y.as_vec();
    let mut k = 0;
    for j in 1..3 {
        if yv[j].abs() < yv[k].abs() {
            k = j;
        }
    }
    let e = Vec3::axis(k);
    let w = e - *yv * yv[k];
    let v1 = w.scale(T::one() / w.norm());
    let v2 = yv.cross(&v1);
    // |y x v1| = 1 up to rounding; renormalize so the invariant holds tightly.
    let v2 = v2.scale(T::one() / v2.norm());
    TangentBasis { base: *y, v1, v2 }
}
