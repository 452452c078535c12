//! Nodal covector fields acting on curves in S^2.

use crate::error::{Error, Result};
use crate::geometry::{Covector3, UnitVec3, Vec3};
use crate::scalar::Scalar;

/// Lower bound on `y1^2 + y2^2` for evaluating the winding field.
pub const POLE_THRESHOLD: f64 = 1e-12;

/// A covector field `l(y)` on the sphere, given by an ambient extension, and
/// its (Newton) derivative along ambient directions.
pub trait NodalLoad<T: Scalar> {
    fn value(&self, y: &UnitVec3<T>) -> Result<Covector3<T>>;

    /// `l'(y) dy` of the ambient extension.
    fn deriv(&self, y: &UnitVec3<T>, dy: &Vec3<T>) -> Result<Covector3<T>>;
}

/// The zero field.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoLoad;

impl<T: Scalar> NodalLoad<T> for NoLoad {
    fn value(&self, _y: &UnitVec3<T>) -> Result<Covector3<T>> {
        Ok(Covector3::zero())
    }

    fn deriv(&self, _y: &UnitVec3<T>, _dy: &Vec3<T>) -> Result<Covector3<T>> {
        Ok(Covector3::zero())
    }
}

fn polar_radius_sq<T: Scalar>(y: &Vec3<T>) -> Result<T> {
    let rho = y[0] * y[0] + y[1] * y[1];
    if !(rho > T::lit(POLE_THRESHOLD)) {
        return Err(Error::PoleSingularity {
            rho: rho.to_f64_lossy(),
        });
    }
    Ok(rho)
}

/// `omega(y) = scale * y3 / (y1^2 + y2^2) * <(-y2, y1, 0), .>`.
///
/// The formula is used verbatim off the sphere as well; it annihilates the
/// radial direction, and only tangential derivatives enter assembly.
pub fn winding_force<T: Scalar>(y: &UnitVec3<T>, scale: T) -> Result<Covector3<T>> {
    let v = y.as_vec();
    let rho = polar_radius_sq(v)?;
    let g = scale * v[2] / rho;
    Ok(Covector3::new(Vec3::new(-v[1] * g, v[0] * g, T::zero())))
}

/// Directional derivative of [`winding_force`] along `dy`.
pub fn winding_force_deriv<T: Scalar>(
    y: &UnitVec3<T>,
    dy: &Vec3<T>,
    scale: T,
) -> Result<Covector3<T>> {
    let v = y.as_vec();
    let rho = polar_radius_sq(v)?;
    let two = T::two();
    // g = y3 / rho, a = (-y2, y1, 0)
    let g = v[2] / rho;
    let dg = dy[2] / rho - two * v[2] * (v[0] * dy[0] + v[1] * dy[1]) / (rho * rho);
    let a = Vec3::new(-v[1], v[0], T::zero());
    let da = Vec3::new(-dy[1], dy[0], T::zero());
    Ok(Covector3::new((a * dg + da * g) * scale))
}

/// The scaled winding field; `scale = 3` is the classical choice.
#[derive(Debug, Clone, Copy)]
pub struct WindingField<T> {
    pub scale: T,
}

impl<T: Scalar> NodalLoad<T> for WindingField<T> {
    fn value(&self, y: &UnitVec3<T>) -> Result<Covector3<T>> {
        if self.scale == T::zero() {
            return Ok(Covector3::zero());
        }
        winding_force(y, self.scale)
    }

    fn deriv(&self, y: &UnitVec3<T>, dy: &Vec3<T>) -> Result<Covector3<T>> {
        if self.scale == T::zero() {
            return Ok(Covector3::zero());
        }
        winding_force_deriv(y, dy, self.scale)
    }
}

/// `m(x) = max(0, x)`.
#[inline]
pub fn max_plus<T: Scalar>(x: T) -> T {
    x.max(T::zero())
}

/// Newton derivative of `max(0, .)`, with the value 0 at the kink.
#[inline]
pub fn max_plus_deriv<T: Scalar>(x: T) -> T {
    if x > T::zero() {
        T::one()
    } else {
        T::zero()
    }
}

/// Derivative of the quadratic penalty `p/2 max(0, y3 - 1 + h_ref)^2`
/// keeping curves below the polar cap `y3 <= 1 - h_ref`.
#[derive(Debug, Clone, Copy)]
pub struct CapPenalty<T> {
    pub h_ref: T,
    pub p: T,
}

impl<T: Scalar> CapPenalty<T> {
    /// Constraint value `c(y) = y3 - 1 + h_ref`.
    #[inline]
    pub fn constraint(&self, y: &Vec3<T>) -> T {
        y[2] - T::one() + self.h_ref
    }
}

impl<T: Scalar> NodalLoad<T> for CapPenalty<T> {
    fn value(&self, y: &UnitVec3<T>) -> Result<Covector3<T>> {
        let m = max_plus(self.constraint(y.as_vec()));
        Ok(Covector3::new(Vec3::new(T::zero(), T::zero(), self.p * m)))
    }

    fn deriv(&self, y: &UnitVec3<T>, dy: &Vec3<T>) -> Result<Covector3<T>> {
        let dm = max_plus_deriv(self.constraint(y.as_vec()));
        Ok(Covector3::new(Vec3::new(
            T::zero(),
            T::zero(),
            self.p * dm * dy[2],
        )))
    }
}
