//! Elastic curves in S^2 under a nodal covector load, discretized by P1
//! elements and the trapezoidal rule.
//!
//! For an interval `[t_i, t_{i+1}]` with slope `s = (y_{i+1} - y_i) / h` the
//! residual contribution to a test function with nodal values `u_a` is
//!
//! ```text
//! <s, u_{i+1} - u_i> + h/2 (l(y_i) u_i + l(y_{i+1}) u_{i+1})
//! ```
//!
//! and the operator pairs trial `d` and test `u` as
//!
//! ```text
//! <d_{i+1} - d_i, u_{i+1} - u_i> / h
//!   + sum_a [ <s, +-P_a> + h/2 l(y_a) P_a + h/2 (l'(y_a) d_a) u_a ]
//! ```
//!
//! with `P_a = (P'(y_a) d_a) u_a`. Test vectors are the nodal tangent bases
//! at the current iterate, or their projections onto the tangent planes of a
//! trial iterate for the transported residual.

use crate::error::{Error, Result};
use crate::fem1d::{
    assemble_matrix, assemble_residual, fd_slope, BlockTriDiag, Grid, IntervalKernel, LocalMatrix,
    LocalVector, NodalCurve,
};
use crate::geometry::{
    retract_sphere, tangent_basis, tangent_project, tangent_project_deriv, Covector3, TangentBasis,
    UnitVec3, Vec3,
};
use crate::linalg::DenseMatrix;
use crate::newton::{norm_inf_nodal, NewtonProblem};
use crate::problems::loads::NodalLoad;
use crate::scalar::Scalar;

/// Tangent dimension of S^2.
const M: usize = 2;

/// Dirichlet energy of a curve in S^2 with boundary values, perturbed by
/// the covector field `load`.
#[derive(Debug, Clone)]
pub struct CurveProblem<T, L> {
    grid: Grid<T>,
    gamma0: UnitVec3<T>,
    gamma_t: UnitVec3<T>,
    load: L,
}

impl<T: Scalar, L: NodalLoad<T>> CurveProblem<T, L> {
    /// Fails for exactly antipodal boundary points, which have no unique
    /// connecting geodesic.
    pub fn new(grid: Grid<T>, gamma0: UnitVec3<T>, gamma_t: UnitVec3<T>, load: L) -> Result<Self> {
        let cos = gamma0.as_vec().dot(gamma_t.as_vec());
        if cos <= T::lit(-1.0 + 1e-14) {
            return Err(Error::InvalidConfig("boundary points are antipodal".into()));
        }
        Ok(CurveProblem {
            grid,
            gamma0,
            gamma_t,
            load,
        })
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn gamma0(&self) -> &UnitVec3<T> {
        &self.gamma0
    }

    pub fn gamma_t(&self) -> &UnitVec3<T> {
        &self.gamma_t
    }

    pub fn load(&self) -> &L {
        &self.load
    }

    /// Replaces the load, keeping grid and boundary data.
    pub fn with_load<L2: NodalLoad<T>>(&self, load: L2) -> CurveProblem<T, L2> {
        CurveProblem {
            grid: self.grid,
            gamma0: self.gamma0,
            gamma_t: self.gamma_t,
            load,
        }
    }

    /// The connecting great-circle arc sampled at the grid.
    pub fn initial_curve(&self) -> Result<NodalCurve<T>> {
        NodalCurve::great_circle(self.grid, &self.gamma0, &self.gamma_t)
    }

    /// Tangent bases at the interior nodes, in dof order.
    pub fn bases(&self, curve: &NodalCurve<T>) -> Vec<TangentBasis<T>> {
        let n = self.grid.n_interior();
        curve.points[1..=n].iter().map(tangent_basis).collect()
    }

    fn check(&self, curve: &NodalCurve<T>) -> Result<()> {
        if curve.points.len() != self.grid.n_nodes() {
            return Err(Error::DimensionMismatch(format!(
                "curve with {} nodes on a grid with {} nodes",
                curve.points.len(),
                self.grid.n_nodes()
            )));
        }
        Ok(())
    }

    fn kernel<'a>(
        &'a self,
        points: &'a [UnitVec3<T>],
        tests: Vec<[Vec3<T>; M]>,
    ) -> Result<CurveKernel<'a, T, L>> {
        let loads = points
            .iter()
            .map(|y| self.load.value(y))
            .collect::<Result<Vec<_>>>()?;
        Ok(CurveKernel {
            problem: self,
            points,
            tests,
            loads,
        })
    }

    fn basis_tests(&self, curve: &NodalCurve<T>) -> Vec<[Vec3<T>; M]> {
        let last = self.grid.n_nodes() - 1;
        curve
            .points
            .iter()
            .enumerate()
            .map(|(a, y)| {
                if a == 0 || a == last {
                    [Vec3::zero(); M]
                } else {
                    tangent_basis(y).vectors()
                }
            })
            .collect()
    }
}

impl<T: Scalar, L: NodalLoad<T>> NewtonProblem<T> for CurveProblem<T, L> {
    type State = NodalCurve<T>;
    type Matrix = BlockTriDiag<T>;

    fn dof_count(&self) -> usize {
        M * self.grid.n_interior()
    }

    fn residual(&self, x: &NodalCurve<T>) -> Result<Vec<T>> {
        self.check(x)?;
        let k = self.kernel(&x.points, self.basis_tests(x))?;
        assemble_residual(&k, self.dof_count())
    }

    fn jacobian(&self, x: &NodalCurve<T>) -> Result<BlockTriDiag<T>> {
        self.check(x)?;
        let k = self.kernel(&x.points, self.basis_tests(x))?;
        assemble_matrix(&k, BlockTriDiag::zeros(self.grid.n_interior(), M))
    }

    fn transported_residual(&self, old: &NodalCurve<T>, new: &NodalCurve<T>) -> Result<Vec<T>> {
        self.check(old)?;
        self.check(new)?;
        let tests = self
            .basis_tests(old)
            .into_iter()
            .zip(&new.points)
            .map(|(v, y)| [tangent_project(y, &v[0]), tangent_project(y, &v[1])])
            .collect();
        let k = self.kernel(&new.points, tests)?;
        assemble_residual(&k, self.dof_count())
    }

    fn retract(&self, x: &NodalCurve<T>, xi: &[T], alpha: T) -> Result<NodalCurve<T>> {
        self.check(x)?;
        if xi.len() != self.dof_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} dofs",
                xi.len(),
                self.dof_count()
            )));
        }
        let mut points = x.points.clone();
        for (a, c) in xi.chunks_exact(M).enumerate() {
            let y = &x.points[a + 1];
            let d = tangent_basis(y).combine(c) * alpha;
            points[a + 1] = retract_sphere(y, &d)?;
        }
        Ok(NodalCurve {
            grid: x.grid,
            points,
        })
    }

    fn norm(&self, x: &NodalCurve<T>, xi: &[T]) -> T {
        norm_inf_nodal(xi, &self.bases(x))
    }
}

struct CurveKernel<'a, T, L> {
    problem: &'a CurveProblem<T, L>,
    points: &'a [UnitVec3<T>],
    /// Test vectors per node; zero at the boundary.
    tests: Vec<[Vec3<T>; M]>,
    loads: Vec<Covector3<T>>,
}

impl<T: Scalar, L: NodalLoad<T>> CurveKernel<'_, T, L> {
    fn node_dofs(&self, a: usize) -> [Option<usize>; M] {
        let n = self.problem.grid.n_interior();
        if a == 0 || a > n {
            [None; M]
        } else {
            [Some(M * (a - 1)), Some(M * (a - 1) + 1)]
        }
    }

    fn local_dofs(&self, e: usize) -> Vec<Option<usize>> {
        let mut d = self.node_dofs(e).to_vec();
        d.extend(self.node_dofs(e + 1));
        d
    }

    fn slope(&self, e: usize) -> Vec3<T> {
        fd_slope(
            self.points[e].as_vec(),
            self.points[e + 1].as_vec(),
            self.problem.grid.h(),
        )
    }
}

impl<T: Scalar, L: NodalLoad<T>> IntervalKernel<T> for CurveKernel<'_, T, L> {
    fn n_intervals(&self) -> usize {
        self.problem.grid.n_intervals()
    }

    fn local_residual(&self, e: usize) -> Result<LocalVector<T>> {
        let s = self.slope(e);
        let half_h = self.problem.grid.h() * T::half();
        let mut values = Vec::with_capacity(2 * M);
        for (side, a) in [(-T::one(), e), (T::one(), e + 1)] {
            for u in &self.tests[a] {
                values.push(side * s.dot(u) + half_h * self.loads[a].apply(u));
            }
        }
        Ok(LocalVector {
            dofs: self.local_dofs(e),
            values,
        })
    }

    fn local_jacobian(&self, e: usize) -> Result<LocalMatrix<T>> {
        let s = self.slope(e);
        let h = self.problem.grid.h();
        let half_h = h * T::half();
        let nodes = [(-T::one(), e), (T::one(), e + 1)];
        let mut values = DenseMatrix::zeros(2 * M, 2 * M);
        for (ra, &(sa, a)) in nodes.iter().enumerate() {
            for (rb, &(sb, b)) in nodes.iter().enumerate() {
                for j in 0..M {
                    let u = &self.tests[a][j];
                    for k in 0..M {
                        let d = &self.tests[b][k];
                        let mut v = sa * sb * d.dot(u) / h;
                        if a == b {
                            let p = tangent_project_deriv(&self.points[a], d, u);
                            let dl = self.problem.load.deriv(&self.points[a], d)?;
                            v += sa * s.dot(&p)
                                + half_h * self.loads[a].apply(&p)
                                + half_h * dl.apply(u);
                        }
                        values[(ra * M + j, rb * M + k)] = v;
                    }
                }
            }
        }
        Ok(LocalMatrix {
            dofs: self.local_dofs(e),
            values,
        })
    }
}
