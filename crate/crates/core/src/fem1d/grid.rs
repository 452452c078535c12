use crate::error::{Error, Result};
use crate::geometry::{UnitVec3, Vec3};
use crate::scalar::Scalar;

/// Uniform grid `t_i = i h`, `i = 0..=N+1`, on `[0, T]` with `N` interior nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    t_end: T,
    n_interior: usize,
    h: T,
}

impl<T: Scalar> Grid<T> {
    pub fn new(t_end: T, n_interior: usize) -> Result<Self> {
        if !(t_end > T::zero()) || !t_end.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "interval length must be positive, got {t_end}"
            )));
        }
        if n_interior == 0 {
            return Err(Error::InvalidConfig(
                "at least one interior node is required".into(),
            ));
        }
        let h = t_end / T::from_usize_lossy(n_interior + 1);
        Ok(Grid {
            t_end,
            n_interior,
            h,
        })
    }

    #[inline]
    pub fn h(&self) -> T {
        self.h
    }

    #[inline]
    pub fn t_end(&self) -> T {
        self.t_end
    }

    /// Number of interior nodes `N`.
    #[inline]
    pub fn n_interior(&self) -> usize {
        self.n_interior
    }

    /// `N + 2`, boundary nodes included.
    #[inline]
    pub fn n_nodes(&self) -> usize {
        self.n_interior + 2
    }

    /// `N + 1`.
    #[inline]
    pub fn n_intervals(&self) -> usize {
        self.n_interior + 1
    }

    /// `t_i`; the last node is pinned to `T` exactly.
    pub fn node(&self, i: usize) -> T {
        if i == self.n_interior + 1 {
            self.t_end
        } else {
            T::from_usize_lossy(i) * self.h
        }
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..self.n_nodes()).map(|i| self.node(i)).collect()
    }
}

/// Piecewise linear curve through points of S^2, boundary nodes included.
#[derive(Debug, Clone, PartialEq)]
pub struct NodalCurve<T> {
    pub grid: Grid<T>,
    pub points: Vec<UnitVec3<T>>,
}

impl<T: Scalar> NodalCurve<T> {
    pub fn new(grid: Grid<T>, points: Vec<UnitVec3<T>>) -> Result<Self> {
        if points.len() != grid.n_nodes() {
            return Err(Error::DimensionMismatch(format!(
                "{} points for a grid with {} nodes",
                points.len(),
                grid.n_nodes()
            )));
        }
        Ok(NodalCurve { grid, points })
    }

    /// Samples the constant-speed great-circle arc from `a` to `b`.
    pub fn great_circle(grid: Grid<T>, a: &UnitVec3<T>, b: &UnitVec3<T>) -> Result<Self> {
        let n = grid.n_nodes();
        let points = (0..n)
            .map(|i| {
                let s = grid.node(i) / grid.t_end();
                slerp(a, b, s)
            })
            .collect::<Result<Vec<_>>>()?;
        // endpoints exactly equal to the data
        let mut points = points;
        points[0] = *a;
        points[n - 1] = *b;
        Ok(NodalCurve { grid, points })
    }

    /// Value of the P1 interpolant at `t`.
    pub fn eval(&self, t: T) -> Vec3<T> {
        let h = self.grid.h();
        let last = self.grid.n_intervals() - 1;
        let i = (t / h).floor().to_usize().unwrap_or(0).min(last);
        let s = (t - self.grid.node(i)) / h;
        *self.points[i].as_vec() * (T::one() - s) + *self.points[i + 1].as_vec() * s
    }
}

/// Spherical linear interpolation; fails for antipodal endpoints.
pub fn slerp<T: Scalar>(a: &UnitVec3<T>, b: &UnitVec3<T>, s: T) -> Result<UnitVec3<T>> {
    let av = *a.as_vec();
    let bv = *b.as_vec();
    let cos = av.dot(&bv).max(-T::one()).min(T::one());
    let angle = cos.acos();
    let sin = angle.sin();
    if sin.abs() <= T::lit(1e-12) {
        if cos > T::zero() {
            return Ok(*a);
        }
        return Err(Error::DegenerateUpdate {
            norm: sin.to_f64_lossy(),
        });
    }
    let wa = ((T::one() - s) * angle).sin() / sin;
    let wb = (s * angle).sin() / sin;
    UnitVec3::normalize(av * wa + bv * wb)
}
