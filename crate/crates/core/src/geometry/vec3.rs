//! Plain 3-vectors of the embedding space and covectors acting on them.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use crate::scalar::Scalar;

/// A vector of the ambient Euclidean space R^3.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T>(pub [T; 3]);

impl<T: Scalar> Vec3<T> {
    #[inline]
    pub fn new(x: T, y: T, z: T) -> Self {
        Vec3([x, y, z])
    }

    #[inline]
    pub fn zero() -> Self {
        Vec3([T::zero(); 3])
    }

    /// The `k`-th standard basis vector.
    pub fn axis(k: usize) -> Self {
        let mut v = Self::zero();
        v.0[k] = T::one();
        v
    }

    pub fn from_f64(xs: [f64; 3]) -> Self {
        Vec3([T::lit(xs[0]), T::lit(xs[1]), T::lit(xs[2])])
    }

    pub fn to_f64(self) -> [f64; 3] {
        self.0.map(Scalar::to_f64_lossy)
    }

    #[inline]
    pub fn dot(&self, other: &Self) -> T {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, o: &Self) -> Self {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = o.0;
        Vec3([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    #[inline]
    pub fn norm_squared(&self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> T {
        self.norm_squared().sqrt()
    }

    pub fn norm_inf(&self) -> T {
        self.0.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    #[inline]
    pub fn scale(self, s: T) -> Self {
        Vec3(self.0.map(|x| x * s))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl<T: Scalar> Add for Vec3<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl<T: Scalar> Sub for Vec3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl<T: Scalar> Neg for Vec3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Vec3(self.0.map(|x| -x))
    }
}

impl<T: Scalar> Mul<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        self.scale(s)
    }
}

impl<T: Scalar> AddAssign for Vec3<T> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Scalar> SubAssign for Vec3<T> {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T> Index<usize> for Vec3<T> {
    type Output = T;
    #[inline]
    fn index(&self, k: usize) -> &T {
        &self.0[k]
    }
}

impl<T> IndexMut<usize> for Vec3<T> {
    #[inline]
    fn index_mut(&mut self, k: usize) -> &mut T {
        &mut self.0[k]
    }
}

/// A linear functional on R^3, acting through the Euclidean pairing.
///
/// Restricted to a tangent plane it represents an element of the cotangent
/// space; the ambient representation is what assembly works with.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Covector3<T> {
    pub coeffs: Vec3<T>,
}

impl<T: Scalar> Covector3<T> {
    pub fn new(coeffs: Vec3<T>) -> Self {
        Covector3 { coeffs }
    }

    pub fn zero() -> Self {
        Covector3 {
            coeffs: Vec3::zero(),
        }
    }

    /// Evaluates the functional on `v`.
    #[inline]
    pub fn apply(&self, v: &Vec3<T>) -> T {
        self.coeffs.dot(v)
    }

    pub fn scale(self, s: T) -> Self {
        Covector3 {
            coeffs: self.coeffs * s,
        }
    }
}

impl<T: Scalar> Add for Covector3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Covector3 {
            coeffs: self.coeffs + o.coeffs,
        }
    }
}
