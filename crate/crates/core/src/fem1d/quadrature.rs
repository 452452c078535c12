use crate::geometry::Vec3;
use crate::scalar::Scalar;

/// Constant slope `(b - a) / h` of a P1 function on one interval.
#[inline]
pub fn fd_slope<T: Scalar>(a: &Vec3<T>, b: &Vec3<T>, h: T) -> Vec3<T> {
    (*b - *a) * (T::one() / h)
}

/// Trapezoidal rule on one interval of length `h`.
#[inline]
pub fn trapezoid_accumulate<T: Scalar>(f_left: T, f_right: T, h: T) -> T {
    h * (f_left + f_right) * T::half()
}
