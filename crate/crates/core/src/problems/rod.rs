//! Inextensible elastic rod as a saddle-point system.
//!
//! Unknowns are the position `y` (P1 in R^3), the unit tangent `v` (P1 in
//! S^2) and the multiplier `lambda` (P0, one covector per interval) of the
//! constraint `y' = v`. The equilibrium conditions, tested with `phi_y`,
//! `phi_v`, `phi_lambda`, are
//!
//! ```text
//! int w(y) phi_y + lambda(phi_y')          = 0
//! int sigma <v', phi_v'> - lambda(phi_v)  = 0
//! int phi_lambda(y' - v)                  = 0
//! ```
//!
//! Nodal pairings use the trapezoidal rule; the P0 multiplier is paired with
//! P1 fields exactly. Only the `v` component lives on a curved factor, so
//! only `v` test vectors are transported and only `v` rows carry connection
//! terms.
//!
//! Dofs are interleaved per node to keep the matrix banded:
//! `lambda_0`, then `(y_i, v_i, lambda_i)` for `i = 1..=N`, which gives
//! `8 N + 3` unknowns and bandwidth 12.

use crate::error::{Error, Result};
use crate::fem1d::{
    assemble_matrix, assemble_residual, BandedMatrix, Grid, IntervalKernel, LocalMatrix,
    LocalVector,
};
use crate::geometry::{
    retract_sphere, tangent_basis, tangent_project, tangent_project_deriv, Covector3, UnitVec3,
    Vec3,
};
use crate::linalg::DenseMatrix;
use crate::newton::NewtonProblem;
use crate::scalar::Scalar;

/// Half-bandwidth of the rod matrix in the interleaved layout.
pub const ROD_BANDWIDTH: usize = 12;

const DOFS_PER_NODE: usize = 8;
const Y_OFF: usize = 0;
const V_OFF: usize = 3;
const L_OFF: usize = 5;

/// Discrete rod configuration, boundary nodes included.
#[derive(Debug, Clone, PartialEq)]
pub struct RodState<T> {
    pub grid: Grid<T>,
    /// `N + 2` positions.
    pub y: Vec<Vec3<T>>,
    /// `N + 2` unit tangents.
    pub v: Vec<UnitVec3<T>>,
    /// `N + 1` multipliers, one per interval.
    pub lambda: Vec<Covector3<T>>,
}

/// A covector field on R^3 acting on the positions.
pub trait RodForce<T: Scalar> {
    fn value(&self, y: &Vec3<T>) -> Covector3<T>;
    fn deriv(&self, y: &Vec3<T>, dy: &Vec3<T>) -> Covector3<T>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NoForce;

impl<T: Scalar> RodForce<T> for NoForce {
    fn value(&self, _y: &Vec3<T>) -> Covector3<T> {
        Covector3::zero()
    }

    fn deriv(&self, _y: &Vec3<T>, _dy: &Vec3<T>) -> Covector3<T> {
        Covector3::zero()
    }
}

/// Affine field `w(y) = a + B y`; `rows` are the rows of `B`.
#[derive(Debug, Clone, Copy)]
pub struct LinearForce<T> {
    pub offset: Vec3<T>,
    pub rows: [Vec3<T>; 3],
}

impl<T: Scalar> RodForce<T> for LinearForce<T> {
    fn value(&self, y: &Vec3<T>) -> Covector3<T> {
        Covector3::new(self.offset + self.deriv(y, y).coeffs)
    }

    fn deriv(&self, _y: &Vec3<T>, dy: &Vec3<T>) -> Covector3<T> {
        let r = &self.rows;
        Covector3::new(Vec3::new(r[0].dot(dy), r[1].dot(dy), r[2].dot(dy)))
    }
}

/// Boundary positions and tangents of a rod on `[0, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RodBoundary<T> {
    pub y_start: Vec3<T>,
    pub y_end: Vec3<T>,
    pub v_start: UnitVec3<T>,
    pub v_end: UnitVec3<T>,
}

impl<T: Scalar> RodBoundary<T> {
    /// `y(0) = 0`, `y(1) = (0.8, 0, 0)`, `v(0) ~ (1, 0, 2)`, `v(1) ~ (1, 0, 0.8)`.
    pub fn reference() -> Self {
        RodBoundary {
            y_start: Vec3::zero(),
            y_end: Vec3::new(T::lit(0.8), T::zero(), T::zero()),
            v_start: UnitVec3::new_unchecked(
                Vec3::new(T::one(), T::zero(), T::two()).scale(T::one() / T::lit(5.0).sqrt()),
            ),
            v_end: UnitVec3::new_unchecked(
                Vec3::new(T::one(), T::zero(), T::lit(0.8)).scale(T::one() / T::lit(1.64).sqrt()),
            ),
        }
    }
}

/// Affine positions, normalized affine tangents and zero multipliers.
pub fn rod_initial_guess<T: Scalar>(grid: Grid<T>, bc: &RodBoundary<T>) -> Result<RodState<T>> {
    let n = grid.n_nodes();
    let mut y = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        let s = grid.node(i) / grid.t_end();
        let r = T::one() - s;
        y.push(bc.y_start * r + bc.y_end * s);
        v.push(UnitVec3::normalize(
            *bc.v_start.as_vec() * r + *bc.v_end.as_vec() * s,
        )?);
    }
    y[0] = bc.y_start;
    y[n - 1] = bc.y_end;
    v[0] = bc.v_start;
    v[n - 1] = bc.v_end;
    Ok(RodState {
        grid,
        y,
        v,
        lambda: vec![Covector3::zero(); grid.n_intervals()],
    })
}

/// The rod equilibrium problem with flexural stiffness `sigma` (one value
/// per interval) and position force `force`.
#[derive(Debug, Clone)]
pub struct RodProblem<T, F> {
    grid: Grid<T>,
    bc: RodBoundary<T>,
    sigma: Vec<T>,
    force: F,
}

impl<T: Scalar, F: RodForce<T>> RodProblem<T, F> {
    pub fn new(grid: Grid<T>, bc: RodBoundary<T>, sigma: Vec<T>, force: F) -> Result<Self> {
        if sigma.len() != grid.n_intervals() {
            return Err(Error::DimensionMismatch(format!(
                "{} stiffness values for {} intervals",
                sigma.len(),
                grid.n_intervals()
            )));
        }
        if let Some(s) = sigma.iter().find(|s| !(**s > T::zero()) || !s.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "flexural stiffness must be positive, got {s}"
            )));
        }
        Ok(RodProblem {
            grid,
            bc,
            sigma,
            force,
        })
    }

    pub fn with_uniform_stiffness(
        grid: Grid<T>,
        bc: RodBoundary<T>,
        sigma: T,
        force: F,
    ) -> Result<Self> {
        Self::new(grid, bc, vec![sigma; grid.n_intervals()], force)
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn boundary(&self) -> &RodBoundary<T> {
        &self.bc
    }

    pub fn sigma(&self) -> &[T] {
        &self.sigma
    }

    pub fn initial_guess(&self) -> Result<RodState<T>> {
        rod_initial_guess(self.grid, &self.bc)
    }

    /// Maximum over intervals of `|(y_{i+1} - y_i)/h - (v_i + v_{i+1})/2|_inf`.
    pub fn constraint_violation(&self, x: &RodState<T>) -> T {
        let h = self.grid.h();
        (0..self.grid.n_intervals())
            .map(|e| {
                let d = (x.y[e + 1] - x.y[e]) * (T::one() / h)
                    - (*x.v[e].as_vec() + *x.v[e + 1].as_vec()) * T::half();
                d.norm_inf()
            })
            .fold(T::zero(), T::max)
    }

    fn check(&self, x: &RodState<T>) -> Result<()> {
        let n = self.grid.n_nodes();
        if x.y.len() != n || x.v.len() != n || x.lambda.len() != n - 1 {
            return Err(Error::DimensionMismatch(format!(
                "rod state with {}/{}/{} entries on a grid with {} nodes",
                x.y.len(),
                x.v.len(),
                x.lambda.len(),
                n
            )));
        }
        Ok(())
    }

    fn basis_tests(&self, x: &RodState<T>) -> Vec<[Vec3<T>; 2]> {
        let last = self.grid.n_nodes() - 1;
        x.v.iter()
            .enumerate()
            .map(|(a, v)| {
                if a == 0 || a == last {
                    [Vec3::zero(); 2]
                } else {
                    tangent_basis(v).vectors()
                }
            })
            .collect()
    }
}

/// Global index of the first `y` dof of interior node `i`.
#[inline]
fn node_start(i: usize) -> usize {
    3 + DOFS_PER_NODE * (i - 1)
}

#[inline]
fn lambda_start(e: usize) -> usize {
    if e == 0 {
        0
    } else {
        node_start(e) + L_OFF
    }
}

impl<T: Scalar, F: RodForce<T>> NewtonProblem<T> for RodProblem<T, F> {
    type State = RodState<T>;
    type Matrix = BandedMatrix<T>;

    fn dof_count(&self) -> usize {
        DOFS_PER_NODE * self.grid.n_interior() + 3
    }

    fn residual(&self, x: &RodState<T>) -> Result<Vec<T>> {
        self.check(x)?;
        let k = RodKernel {
            problem: self,
            state: x,
            tests: self.basis_tests(x),
        };
        assemble_residual(&k, self.dof_count())
    }

    fn jacobian(&self, x: &RodState<T>) -> Result<BandedMatrix<T>> {
        self.check(x)?;
        let k = RodKernel {
            problem: self,
            state: x,
            tests: self.basis_tests(x),
        };
        let dim = self.dof_count();
        assemble_matrix(&k, BandedMatrix::zeros(dim, ROD_BANDWIDTH, ROD_BANDWIDTH))
    }

    fn transported_residual(&self, old: &RodState<T>, new: &RodState<T>) -> Result<Vec<T>> {
        self.check(old)?;
        self.check(new)?;
        let tests = self
            .basis_tests(old)
            .into_iter()
            .zip(&new.v)
            .map(|(w, v)| [tangent_project(v, &w[0]), tangent_project(v, &w[1])])
            .collect();
        let k = RodKernel {
            problem: self,
            state: new,
            tests,
        };
        assemble_residual(&k, self.dof_count())
    }

    fn retract(&self, x: &RodState<T>, xi: &[T], alpha: T) -> Result<RodState<T>> {
        self.check(x)?;
        if xi.len() != self.dof_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} dofs",
                xi.len(),
                self.dof_count()
            )));
        }
        let mut out = x.clone();
        let vec_at = |k: usize| Vec3::new(xi[k], xi[k + 1], xi[k + 2]) * alpha;
        out.lambda[0].coeffs += vec_at(0);
        for i in 1..=self.grid.n_interior() {
            let s = node_start(i);
            out.y[i] += vec_at(s + Y_OFF);
            let d = tangent_basis(&x.v[i]).combine(&xi[s + V_OFF..s + V_OFF + 2]) * alpha;
            out.v[i] = retract_sphere(&x.v[i], &d)?;
            out.lambda[i].coeffs += vec_at(s + L_OFF);
        }
        Ok(out)
    }

    /// Largest Euclidean norm over the nodal `y`, `v` and interval `lambda`
    /// blocks.
    fn norm(&self, x: &RodState<T>, xi: &[T]) -> T {
        let block = |k: usize| Vec3::new(xi[k], xi[k + 1], xi[k + 2]).norm();
        let mut m = block(0);
        for i in 1..=self.grid.n_interior() {
            let s = node_start(i);
            let dv = tangent_basis(&x.v[i]).combine(&xi[s + V_OFF..s + V_OFF + 2]);
            m = m.max(block(s + Y_OFF)).max(dv.norm()).max(block(s + L_OFF));
        }
        m
    }
}

struct RodKernel<'a, T, F> {
    problem: &'a RodProblem<T, F>,
    state: &'a RodState<T>,
    tests: Vec<[Vec3<T>; 2]>,
}

// Local layout: y_e(3) v_e(2) lambda_e(3) y_{e+1}(3) v_{e+1}(2)
const LOC_Y: [usize; 2] = [0, 8];
const LOC_V: [usize; 2] = [3, 11];
const LOC_L: usize = 5;
const LOC_N: usize = 13;

impl<T: Scalar, F: RodForce<T>> RodKernel<'_, T, F> {
    fn local_dofs(&self, e: usize) -> Vec<Option<usize>> {
        let n = self.problem.grid.n_interior();
        let node = |i: usize, off: usize, len: usize| -> Vec<Option<usize>> {
            if i == 0 || i > n {
                vec![None; len]
            } else {
                (0..len).map(|k| Some(node_start(i) + off + k)).collect()
            }
        };
        let mut d = node(e, Y_OFF, 3);
        d.extend(node(e, V_OFF, 2));
        d.extend((0..3).map(|k| Some(lambda_start(e) + k)));
        d.extend(node(e + 1, Y_OFF, 3));
        d.extend(node(e + 1, V_OFF, 2));
        d
    }
}

impl<T: Scalar, F: RodForce<T>> IntervalKernel<T> for RodKernel<'_, T, F> {
    fn n_intervals(&self) -> usize {
        self.problem.grid.n_intervals()
    }

    fn local_residual(&self, e: usize) -> Result<LocalVector<T>> {
        let x = self.state;
        let h = self.problem.grid.h();
        let half_h = h * T::half();
        let sigma = self.problem.sigma[e];
        let lam = x.lambda[e];
        let v_dot = (*x.v[e + 1].as_vec() - *x.v[e].as_vec()) * (T::one() / h);
        let mut values = vec![T::zero(); LOC_N];
        for (side, a) in [(-T::one(), 0), (T::one(), 1)] {
            let w = self.problem.force.value(&x.y[e + a]);
            for j in 0..3 {
                values[LOC_Y[a] + j] = half_h * w.coeffs[j] + side * lam.coeffs[j];
            }
            for (j, u) in self.tests[e + a].iter().enumerate() {
                values[LOC_V[a] + j] = sigma * side * v_dot.dot(u) - half_h * lam.apply(u);
            }
        }
        let gap = (x.y[e + 1] - x.y[e]) - (*x.v[e].as_vec() + *x.v[e + 1].as_vec()) * half_h;
        for j in 0..3 {
            values[LOC_L + j] = gap[j];
        }
        Ok(LocalVector {
            dofs: self.local_dofs(e),
            values,
        })
    }

    fn local_jacobian(&self, e: usize) -> Result<LocalMatrix<T>> {
        let x = self.state;
        let h = self.problem.grid.h();
        let half_h = h * T::half();
        let sigma = self.problem.sigma[e];
        let lam = x.lambda[e];
        let v_dot = (*x.v[e + 1].as_vec() - *x.v[e].as_vec()) * (T::one() / h);
        let sides = [-T::one(), T::one()];
        let mut m = DenseMatrix::zeros(LOC_N, LOC_N);
        for a in 0..2 {
            let sa = sides[a];
            let ya = &x.y[e + a];
            // y rows
            for k in 0..3 {
                let dw = self.problem.force.deriv(ya, &Vec3::axis(k));
                for j in 0..3 {
                    m[(LOC_Y[a] + j, LOC_Y[a] + k)] = half_h * dw.coeffs[j];
                }
                m[(LOC_Y[a] + k, LOC_L + k)] = sa;
            }
            // v rows
            for (j, u) in self.tests[e + a].iter().enumerate() {
                let row = LOC_V[a] + j;
                for b in 0..2 {
                    let sb = sides[b];
                    for (k, d) in self.tests[e + b].iter().enumerate() {
                        let mut val = sigma * sa * sb * d.dot(u) / h;
                        if a == b {
                            let p = tangent_project_deriv(&x.v[e + a], d, u);
                            val += sigma * sa * v_dot.dot(&p) - half_h * lam.apply(&p);
                        }
                        m[(row, LOC_V[b] + k)] = val;
                    }
                }
                for k in 0..3 {
                    m[(row, LOC_L + k)] = -half_h * u[k];
                }
            }
            // lambda rows
            for k in 0..3 {
                m[(LOC_L + k, LOC_Y[a] + k)] = sa;
            }
            for (k, d) in self.tests[e + a].iter().enumerate() {
                for j in 0..3 {
                    m[(LOC_L + j, LOC_V[a] + k)] = -half_h * d[j];
                }
            }
        }
        Ok(LocalMatrix {
            dofs: self.local_dofs(e),
            values: m,
        })
    }
}
