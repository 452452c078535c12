//! Acceptance suite. Runs every criterion in sequence and prints one
//! PASS/FAIL line each. With `ACCEPTANCE_STRICT=1` any failure also makes
//! the process exit non-zero.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bundle_newton::fem1d::{BandedMatrix, BlockTriDiag, NodalCurve};
use bundle_newton::geometry::{
    constrained_hessian_apply, lagrange_multiplier, tangent_basis, tangent_project,
    tangent_project_deriv, Covector3, UnitVec3, Vec3,
};
use bundle_newton::linalg::{DenseMatrix, SystemMatrix};
use bundle_newton::newton::{damped_newton, NewtonConfig, NewtonProblem, NewtonTrace, Termination};
use bundle_newton::problems::{
    default_geodesic_boundary, default_obstacle_boundary, geodesic_force_problem,
    obstacle_path_follow, CapPenalty, NoForce, ObstacleProblem, RodBoundary, RodProblem, RodState,
};
use common::*;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64, what: &str) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, || {
        format!(
            "{what} took {:.2} s, limit {limit_s} s",
            elapsed.as_secs_f64()
        )
    })
}

// 1 ---------------------------------------------------------------------------

fn jacobian_consistency() -> Outcome {
    const STATES: usize = 20;
    const DIRS: usize = 10;
    const STEP: f64 = 1e-5;
    const TOL: f64 = 1e-6;
    let start = Instant::now();
    let mut rng = rng(1);
    let mut worst: f64 = 0.0;
    let mut check = |err: f64, scale: f64, what: &str| -> Result<(), String> {
        let rel = err / scale;
        worst = worst.max(rel);
        ensure(rel <= TOL, || format!("{what}: relative mismatch {rel:e}"))
    };

    // geodesic in the winding field
    let (a, b) = default_geodesic_boundary();
    let geo = geodesic_force_problem(30, a, b, 3.0).map_err(|e| e.to_string())?;
    let base = geo.initial_curve().unwrap();
    let mut states = 0;
    while states < STATES {
        let x = perturb_curve(&base, &mut rng, 0.3);
        let near_pole = x
            .points
            .iter()
            .any(|p| p.get(0).powi(2) + p.get(1).powi(2) < 1e-2);
        if near_pole {
            continue;
        }
        states += 1;
        for _ in 0..DIRS {
            let dir = random_vec(&mut rng, geo.dof_count(), 1.0);
            let (err, scale) = fd_mismatch(&geo, &x, &dir, STEP);
            check(err, scale, "geodesic")?;
        }
    }

    // obstacle, away from the kink of the penalty
    let (a, b) = default_obstacle_boundary();
    let obs = ObstacleProblem::new(grid(30), a, b, 0.1).map_err(|e| e.to_string())?;
    let base = obs.initial_curve().unwrap();
    let mut states = 0;
    let mut skipped = 0;
    while states < STATES {
        let x = perturb_curve(&base, &mut rng, 0.1);
        let p = rng.gen_range(1.0..100.0);
        let pen = obs.penalized(p).unwrap();
        let cap = CapPenalty { h_ref: 0.1, p };
        let dirs: Vec<Vec<f64>> = (0..DIRS)
            .map(|_| random_vec(&mut rng, pen.dof_count(), 1.0))
            .collect();
        // the active set must not change along any difference stencil
        let clear = dirs.iter().all(|d| {
            let plus = pen.retract(&x, d, STEP).unwrap();
            let minus = pen.retract(&x, d, -STEP).unwrap();
            kink_distance(&cap, &[&x, &plus, &minus]) > 1e-8
        });
        if !clear {
            skipped += 1;
            continue;
        }
        states += 1;
        for d in &dirs {
            let (err, scale) = fd_mismatch(&pen, &x, d, STEP);
            check(err, scale, "obstacle")?;
        }
    }

    // rod
    let rod = RodProblem::with_uniform_stiffness(grid(30), RodBoundary::reference(), 1.0, NoForce)
        .unwrap();
    let base = rod.initial_guess().unwrap();
    for _ in 0..STATES {
        let x = perturb_rod(&base, &mut rng, 0.2, 2.0);
        for _ in 0..DIRS {
            let dir = random_vec(&mut rng, rod.dof_count(), 1.0);
            let (err, scale) = fd_mismatch(&rod, &x, &dir, STEP);
            check(err, scale, "rod")?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 30.0, "consistency suite")?;
    Ok(format!(
        "3 problems x {STATES} states x {DIRS} directions, worst relative mismatch {worst:.2e}, \
         {skipped} obstacle states resampled near the kink, {:.2} s",
        elapsed.as_secs_f64()
    ))
}

// 2 ---------------------------------------------------------------------------

/// Largest distance between the P1 interpolant of `curve` and the
/// constant-speed great-circle arc from its first to its last point,
/// sampled at interval midpoints and nodes.
fn interpolant_deviation(curve: &NodalCurve<f64>) -> (f64, f64) {
    let a = *curve.points[0].as_vec();
    let b = *curve.points[curve.points.len() - 1].as_vec();
    let angle = a.dot(&b).clamp(-1.0, 1.0).acos();
    let arc =
        |s: f64| (a * ((1.0 - s) * angle).sin() + b * (s * angle).sin()) * (1.0 / angle.sin());
    let g = curve.grid;
    let mut nodal: f64 = 0.0;
    let mut inter: f64 = 0.0;
    for i in 0..g.n_intervals() {
        let t0 = g.node(i);
        nodal = nodal.max((curve.eval(t0) - arc(t0 / g.t_end())).norm());
        let tm = t0 + 0.5 * g.h();
        inter = inter.max((curve.eval(tm) - arc(tm / g.t_end())).norm());
    }
    (nodal, inter)
}

fn force_free_geodesic() -> Outcome {
    let (a, b) = default_geodesic_boundary();
    let mut rng = rng(2);
    let mut devs = Vec::new();
    let mut report = Vec::new();
    for n in [50, 100] {
        let p = geodesic_force_problem(n, a, b, 0.0).map_err(|e| e.to_string())?;
        let x0 = perturb_curve(&p.initial_curve().unwrap(), &mut rng, 1e-3);
        let out = damped_newton(&p, x0, &NewtonConfig::undamped()).map_err(|e| e.to_string())?;
        let t = &out.trace;
        let last = *t.norms().last().unwrap();
        ensure(t.converged(), || format!("N={n}: {}", t.terminated))?;
        ensure(t.outer_count() <= 4, || {
            format!(
                "N={n}: {} iterations, norms {:?}",
                t.outer_count(),
                t.norms()
            )
        })?;
        ensure(last <= 1e-10, || format!("N={n}: final step {last:e}"))?;
        let (nodal, inter) = interpolant_deviation(&out.state);
        // the sampled great circle solves the discrete equations exactly
        ensure(nodal <= 1e-12, || {
            format!("N={n}: nodal deviation {nodal:e}")
        })?;
        devs.push(inter);
        report.push(format!(
            "N={n}: {} its, nodal dev {nodal:.1e}",
            t.outer_count()
        ));
    }
    let ratio = devs[0] / devs[1];
    ensure((3.2..=4.8).contains(&ratio), || {
        format!("deviation ratio {ratio} from {devs:?}")
    })?;
    Ok(format!(
        "{}; interpolant deviation {:.3e} -> {:.3e}, ratio {ratio:.3}",
        report.join(", "),
        devs[0],
        devs[1]
    ))
}

// 3 and 4 ---------------------------------------------------------------------

fn winding_runs() -> Result<Vec<(usize, NewtonTrace<f64>, Duration)>, String> {
    let (a, b) = default_geodesic_boundary();
    let mut runs = Vec::new();
    for n in [100, 1000] {
        let p = geodesic_force_problem(n, a, b, 3.0).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let out = damped_newton(&p, p.initial_curve().unwrap(), &NewtonConfig::default())
            .map_err(|e| e.to_string())?;
        runs.push((n, out.trace, start.elapsed()));
    }
    Ok(runs)
}

fn mesh_independence(runs: &[(usize, NewtonTrace<f64>, Duration)]) -> Outcome {
    let mut counts = Vec::new();
    for (n, t, el) in runs {
        ensure(t.converged(), || format!("N={n}: {}", t.terminated))?;
        ensure(t.outer_count() <= 8, || {
            format!("N={n}: {} iterations", t.outer_count())
        })?;
        if *n == 1000 {
            within(*el, 10.0, "N=1000 run")?;
        }
        counts.push(t.outer_count());
    }
    ensure(counts[0].abs_diff(counts[1]) <= 1, || {
        format!("counts {counts:?}")
    })?;
    Ok(format!(
        "iterations N=100: {}, N=1000: {} ({:.2} s)",
        counts[0],
        counts[1],
        runs[1].2.as_secs_f64()
    ))
}

fn superlinear_tail(runs: &[(usize, NewtonTrace<f64>, Duration)]) -> Outcome {
    let mut report = Vec::new();
    for (n, t, _) in runs {
        let norms = t.norms();
        let first = norms.iter().position(|v| *v < 1e-2);
        let Some(k0) = first else {
            return Err(format!("N={n}: step never below 1e-2: {norms:?}"));
        };
        for k in k0..norms.len() - 1 {
            ensure(norms[k + 1] <= norms[k].powf(1.2), || {
                format!(
                    "N={n}: step {} -> {} violates the 1.2 power",
                    norms[k],
                    norms[k + 1]
                )
            })?;
        }
        let seq: Vec<String> = norms.iter().map(|v| format!("{v:.1e}")).collect();
        report.push(format!("N={n}: [{}]", seq.join(", ")));
    }
    Ok(report.join("; "))
}

// 5 ---------------------------------------------------------------------------

fn obstacle() -> Outcome {
    let start = Instant::now();
    let (a, b) = default_obstacle_boundary();
    let mut report = Vec::new();
    for h_ref in [0.1, 0.2] {
        let o = ObstacleProblem::new(grid(100), a, b, h_ref).map_err(|e| e.to_string())?;
        let out =
            obstacle_path_follow(&o, None, &NewtonConfig::default()).map_err(|e| e.to_string())?;
        ensure(out.terminated == Termination::Converged, || {
            format!("h_ref={h_ref}: {} {:?}", out.terminated, out.diagnostic)
        })?;
        ensure(out.stages.iter().all(|s| s.trace.converged()), || {
            format!("h_ref={h_ref}: a stage did not converge")
        })?;
        let top = out
            .curve
            .points
            .iter()
            .map(|p| p.get(2))
            .fold(f64::MIN, f64::max);
        ensure(top <= 1.0 - h_ref + 1e-3, || {
            format!("h_ref={h_ref}: max y3 {top}")
        })?;
        let n = out.curve.points.len();
        ensure(
            out.curve.points[0] == a && out.curve.points[n - 1] == b,
            || format!("h_ref={h_ref}: endpoints moved"),
        )?;
        let monotone = out
            .stages
            .windows(2)
            .all(|w| w[1].violation <= w[0].violation);
        report.push(format!(
            "h_ref={h_ref}: {} stages, final p {:.1}, max y3 {top:.5}, monotone violation {monotone}",
            out.stages.len(),
            out.final_p
        ));
    }
    let elapsed = start.elapsed();
    within(elapsed, 60.0, "obstacle runs")?;
    Ok(format!(
        "{} ({:.2} s)",
        report.join("; "),
        elapsed.as_secs_f64()
    ))
}

// 6 ---------------------------------------------------------------------------

fn rod() -> Outcome {
    let p = RodProblem::with_uniform_stiffness(grid(100), RodBoundary::reference(), 1.0, NoForce)
        .unwrap();
    let out = damped_newton(&p, p.initial_guess().unwrap(), &NewtonConfig::default())
        .map_err(|e| e.to_string())?;
    let t = &out.trace;
    let alphas = t.accepted_alphas();
    let last = *t.norms().last().unwrap();
    let gap = p.constraint_violation(&out.state);
    let unit_err = out
        .state
        .v
        .iter()
        .map(|v| (v.as_vec().norm() - 1.0).abs())
        .fold(0.0, f64::max);
    let a: Vec<String> = alphas.iter().map(|a| format!("{a:.3}")).collect();
    let summary = format!(
        "{} after {} iterations, final |dx| {last:.1e}, alphas [{}], constraint residual {gap:.1e}, \
         unit norm error {unit_err:.1e}",
        t.terminated,
        t.outer_count(),
        a.join(", ")
    );
    // every check is evaluated so that the report is complete
    let mut broken = Vec::new();
    if !t.converged() {
        broken.push("not converged".to_string());
    }
    if t.outer_count() > 15 {
        broken.push(format!("{} > 15 iterations", t.outer_count()));
    }
    if last > 1e-10 {
        broken.push("final step above 1e-10".to_string());
    }
    if !alphas.iter().any(|a| *a < 1.0) {
        broken.push("never damped".to_string());
    }
    if let Some(first) = alphas.iter().position(|a| *a == 1.0) {
        if alphas[first..].iter().any(|a| *a < 1.0) {
            broken.push("damping after a full step".to_string());
        }
    }
    if gap > 1e-8 {
        broken.push("constraint residual above 1e-8".to_string());
    }
    if unit_err > 1e-12 {
        broken.push("unit norm error above 1e-12".to_string());
    }
    ensure(broken.is_empty(), || {
        format!("{}; {summary}", broken.join(", "))
    })?;
    Ok(summary)
}

// 7 ---------------------------------------------------------------------------

fn to_nalgebra(a: &DenseMatrix<f64>) -> nalgebra::DMatrix<f64> {
    nalgebra::DMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)])
}

fn oracle_solve(a: &DenseMatrix<f64>, b: &[f64]) -> Vec<f64> {
    let rhs = nalgebra::DVector::from_iterator(b.len(), b.iter().map(|v| -v));
    to_nalgebra(a)
        .lu()
        .solve(&rhs)
        .expect("oracle failed")
        .iter()
        .copied()
        .collect()
}

fn rel_err(x: &[f64], y: &[f64]) -> f64 {
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    max_abs(&d) / max_abs(y).max(f64::MIN_POSITIVE)
}

fn solver_oracles() -> Outcome {
    let mut rng = rng(7);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let m = if rng.gen_bool(0.5) { 2 } else { 3 };
        let nb = rng.gen_range(1..=20);
        let mut a = BlockTriDiag::zeros(nb, m);
        let dim = nb * m;
        for i in 0..dim {
            for j in 0..dim {
                if (i / m).abs_diff(j / m) <= 1 {
                    let mut v = rng.gen_range(-1.0..1.0);
                    if i == j {
                        v += 3.0 * m as f64 * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                    }
                    a.add_entry(i, j, v).unwrap();
                }
            }
        }
        let b = random_vec(&mut rng, dim, 1.0);
        let x = bundle_newton::fem1d::solve_block_tridiagonal(&a, &b).map_err(|e| e.to_string())?;
        let e = rel_err(&x, &oracle_solve(&a.to_dense(), &b));
        worst = worst.max(e);
        ensure(e <= 1e-10, || format!("block tridiagonal error {e:e}"))?;

        let dim = rng.gen_range(1..=200);
        let kl = rng.gen_range(0..=6);
        let ku = rng.gen_range(0..=6);
        let mut a = BandedMatrix::zeros(dim, kl, ku);
        for i in 0..dim {
            for j in i.saturating_sub(kl)..=(i + ku).min(dim - 1) {
                let mut v = rng.gen_range(-1.0..1.0);
                if i == j {
                    // weak diagonal so that pivoting is exercised
                    v += (kl + ku) as f64 * 0.5 + 1.0;
                }
                a.add_entry(i, j, v).unwrap();
            }
        }
        let b = random_vec(&mut rng, dim, 1.0);
        let x = bundle_newton::fem1d::solve_banded(&a, &b).map_err(|e| e.to_string())?;
        let e = rel_err(&x, &oracle_solve(&a.to_dense(), &b));
        worst = worst.max(e);
        ensure(e <= 1e-10, || format!("banded error {e:e}"))?;
    }
    Ok(format!(
        "200 block-tridiagonal + 200 banded instances, worst relative error {worst:.1e}"
    ))
}

// 8 ---------------------------------------------------------------------------

fn structural() -> Outcome {
    let (a, b) = default_geodesic_boundary();
    let asym = |scale: f64| -> f64 {
        let p = geodesic_force_problem(50, a, b, scale).unwrap();
        let mut rng = rng(8);
        let c = perturb_curve(&p.initial_curve().unwrap(), &mut rng, 0.1);
        let m = p.jacobian(&c).unwrap().to_dense();
        m.sub(&m.transpose()).norm_inf() / m.norm_inf()
    };
    let free = asym(0.0);
    let forced = asym(3.0);
    ensure(free <= 1e-12, || format!("force-free asymmetry {free:e}"))?;
    ensure(forced > 1e-8, || {
        format!("winding-field asymmetry {forced:e}")
    })?;

    // exact discrete solutions: great circle without force, circular rod
    let p = geodesic_force_problem(40, a, b, 0.0).unwrap();
    let out = damped_newton(&p, p.initial_curve().unwrap(), &NewtonConfig::default())
        .map_err(|e| e.to_string())?;
    let n0 = out.trace.iterations[0].norm_dx;
    ensure(
        out.trace.converged() && out.trace.outer_count() == 1 && n0 <= 1e-12,
        || format!("geodesic root start: {:?}", out.trace.norms()),
    )?;
    // discrete planar arc: tangents on a great circle, positions integrated
    // by the trapezoidal rule, zero multipliers
    let g = grid(20);
    let v = NodalCurve::great_circle(g, &unit([1.0, 0.0, 0.0]), &unit([0.0, 0.6, 0.8]))
        .unwrap()
        .points;
    let mut y = vec![Vec3::zero()];
    for i in 0..v.len() - 1 {
        let step = (*v[i].as_vec() + *v[i + 1].as_vec()) * (0.5 * g.h());
        y.push(y[i] + step);
    }
    let bc = RodBoundary {
        y_start: y[0],
        y_end: y[y.len() - 1],
        v_start: v[0],
        v_end: v[v.len() - 1],
    };
    let rod = RodProblem::with_uniform_stiffness(g, bc, 1.0, NoForce).unwrap();
    let arc = RodState {
        grid: g,
        lambda: vec![Covector3::zero(); v.len() - 1],
        y,
        v,
    };
    let out = damped_newton(&rod, arc, &NewtonConfig::default()).map_err(|e| e.to_string())?;
    let r0 = out.trace.iterations[0].norm_dx;
    ensure(
        out.trace.converged() && out.trace.outer_count() == 1 && r0 <= 1e-12,
        || format!("rod root start: {:?}", out.trace.norms()),
    )?;
    Ok(format!(
        "asymmetry {free:.1e} (force-free) vs {forced:.1e} (winding); root starts give |dx| {n0:.1e}, {r0:.1e}"
    ))
}

// 9 ---------------------------------------------------------------------------

/// Multiplies residual and operator of `inner` by `s`.
struct Scaled<'a, P> {
    inner: &'a P,
    s: f64,
}

impl<P: NewtonProblem<f64>> NewtonProblem<f64> for Scaled<'_, P> {
    type State = P::State;
    type Matrix = P::Matrix;

    fn dof_count(&self) -> usize {
        self.inner.dof_count()
    }

    fn residual(&self, x: &P::State) -> bundle_newton::Result<Vec<f64>> {
        Ok(self
            .inner
            .residual(x)?
            .into_iter()
            .map(|v| v * self.s)
            .collect())
    }

    fn jacobian(&self, x: &P::State) -> bundle_newton::Result<P::Matrix> {
        let mut a = self.inner.jacobian(x)?;
        a.scale(self.s);
        Ok(a)
    }

    fn transported_residual(
        &self,
        old: &P::State,
        new: &P::State,
    ) -> bundle_newton::Result<Vec<f64>> {
        Ok(self
            .inner
            .transported_residual(old, new)?
            .into_iter()
            .map(|v| v * self.s)
            .collect())
    }

    fn retract(&self, x: &P::State, xi: &[f64], alpha: f64) -> bundle_newton::Result<P::State> {
        self.inner.retract(x, xi, alpha)
    }

    fn norm(&self, x: &P::State, xi: &[f64]) -> f64 {
        self.inner.norm(x, xi)
    }
}

fn rel_diff(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m == 0.0 {
        0.0
    } else {
        (a - b).abs() / m
    }
}

/// Largest relative differences between two runs, per quantity.
#[derive(Default)]
struct TraceDiff {
    structure: Vec<String>,
    xi: f64,
    theta: f64,
    alpha: f64,
    norm_dx: f64,
    /// (problem, s, iteration) of the largest theta difference
    theta_at: String,
    /// Largest theta difference over trials whose simplified step exceeds
    /// `RESOLVED` in norm, i.e. lies clearly above rounding noise.
    theta_resolved: f64,
}

const RESOLVED: f64 = 1e-10;

impl TraceDiff {
    fn compare(&mut self, name: &str, base: &NewtonTrace<f64>, other: &NewtonTrace<f64>, s: f64) {
        if base.terminated != other.terminated || base.outer_count() != other.outer_count() {
            self.structure.push(format!(
                "{name}, s={s:e}: {} its ({}) vs {} its ({})",
                base.outer_count(),
                base.terminated,
                other.outer_count(),
                other.terminated
            ));
        }
        for (k, (r, q)) in base.iterations.iter().zip(&other.iterations).enumerate() {
            if r.trials.len() != q.trials.len() {
                self.structure.push(format!(
                    "{name}, s={s:e}, iteration {k}: trial counts differ"
                ));
            }
            for (u, v) in r.trials.iter().zip(&q.trials) {
                self.alpha = self.alpha.max(rel_diff(u.alpha, v.alpha));
                let d = rel_diff(u.theta, v.theta);
                if u.theta * u.alpha * r.norm_dx > RESOLVED {
                    self.theta_resolved = self.theta_resolved.max(d);
                }
                if d > self.theta {
                    self.theta = d;
                    self.theta_at =
                        format!("{name}, s={s:e}, iteration {k}, theta {:.3e}", u.theta);
                }
            }
            self.norm_dx = self.norm_dx.max(rel_diff(r.norm_dx, q.norm_dx));
        }
    }
}

fn affine_covariance() -> Outcome {
    const TOL: f64 = 1e-12;
    let cfg = NewtonConfig::default();
    let mut diff = TraceDiff::default();

    let (a, b) = default_geodesic_boundary();
    let geo = geodesic_force_problem(100, a, b, 3.0).unwrap();
    let rod = RodProblem::with_uniform_stiffness(grid(100), RodBoundary::reference(), 1.0, NoForce)
        .unwrap();

    fn run<P: NewtonProblem<f64>>(
        name: &str,
        p: &P,
        x0: P::State,
        cfg: &NewtonConfig<f64>,
        diff: &mut TraceDiff,
    ) -> Result<usize, String> {
        let base = damped_newton(p, x0.clone(), cfg).map_err(|e| e.to_string())?;
        for s in [1e-6, 1e6] {
            let sp = Scaled { inner: p, s };
            let (a0, b0) = p.assemble(&x0).map_err(|e| e.to_string())?;
            let (a1, b1) = sp.assemble(&x0).map_err(|e| e.to_string())?;
            let xi0 =
                bundle_newton::newton::newton_direction(&a0, &b0).map_err(|e| e.to_string())?;
            let xi1 =
                bundle_newton::newton::newton_direction(&a1, &b1).map_err(|e| e.to_string())?;
            diff.xi = diff.xi.max(rel_err(&xi1, &xi0));
            let out = damped_newton(&sp, x0.clone(), cfg).map_err(|e| e.to_string())?;
            diff.compare(name, &base.trace, &out.trace, s);
        }
        Ok(base.trace.outer_count())
    }

    let g = run(
        "geodesic",
        &geo,
        geo.initial_curve().unwrap(),
        &cfg,
        &mut diff,
    )?;
    let r = run("rod", &rod, rod.initial_guess().unwrap(), &cfg, &mut diff)?;
    let summary = format!(
        "geodesic {g} its, rod {r} its, s = 1e-6 and 1e6; max relative change: xi {:.1e}, \
         theta {:.1e} ({}), theta with |dx_bar| > {RESOLVED:e} {:.1e}, alpha {:.1e}, |dx| {:.1e}",
        diff.xi, diff.theta, diff.theta_at, diff.theta_resolved, diff.alpha, diff.norm_dx
    );
    ensure(diff.structure.is_empty(), || {
        format!("{}; {summary}", diff.structure.join("; "))
    })?;
    ensure(
        diff.xi <= TOL && diff.theta <= TOL && diff.alpha <= TOL,
        || format!("above {TOL:e}: {summary}"),
    )?;
    Ok(summary)
}

// 10 --------------------------------------------------------------------------

fn constrained_hessian() -> Outcome {
    // f(x) = <a, x> + <x, B x>/2 on the sphere c(x) = (|x|^2 - 1)/2 = 0
    let mut rng = rng(10);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let y = loop {
            let v = random_vec3(&mut rng, 1.0);
            if v.norm() > 0.1 {
                break UnitVec3::normalize(v).unwrap();
            }
        };
        let lin = random_vec3(&mut rng, 1.0);
        let raw = DenseMatrix::from_fn(3, 3, |_, _| rng.gen_range(-1.0..1.0));
        let mut hess = raw.clone();
        hess.add_scaled(&raw.transpose(), 1.0);
        let grad = {
            let by = hess.mul_vec(&y.as_vec().0);
            lin + Vec3::new(by[0], by[1], by[2])
        };
        let jac = DenseMatrix::from_rows(&[y.as_vec().0.to_vec()]);
        let lambda = lagrange_multiplier(&grad.0, &jac).map_err(|e| e.to_string())?;
        let d = tangent_project(&y, &random_vec3(&mut rng, 1.0));
        let got =
            constrained_hessian_apply(&hess, &jac, &[DenseMatrix::identity(3)], &lambda, &d.0)
                .map_err(|e| e.to_string())?;
        // projection-derivative form: P(y) (f'' d + (P'(y) d)^T grad f)
        let hd = hess.mul_vec(&d.0);
        let hd = Vec3::new(hd[0], hd[1], hd[2]);
        let basis = tangent_basis(&y);
        for u in basis.vectors() {
            let expect = hd.dot(&u) + grad.dot(&tangent_project_deriv(&y, &d, &u));
            let value = Vec3::new(got[0], got[1], got[2]).dot(&u);
            let e = (value - expect).abs() / expect.abs().max(hd.norm()).max(1e-300);
            worst = worst.max(e);
            ensure(e <= 1e-8, || format!("mismatch {e:e}: {value} vs {expect}"))?;
        }
    }
    Ok(format!("100 instances, worst relative error {worst:.1e}"))
}

// -----------------------------------------------------------------------------

fn main() {
    let mut failed = 0;
    let mut report = |id: usize, name: &str, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("PASS criterion {id:>2} {name} [{secs:.2} s]: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {id:>2} {name} [{secs:.2} s]: {msg}");
            }
        }
    };
    report(1, "jacobian-consistency", &jacobian_consistency);
    report(2, "force-free-geodesic", &force_free_geodesic);
    let runs = winding_runs();
    report(3, "mesh-independence", &|| {
        mesh_independence(runs.as_ref().map_err(|e| e.clone())?)
    });
    report(4, "superlinear-tail", &|| {
        superlinear_tail(runs.as_ref().map_err(|e| e.clone())?)
    });
    report(5, "obstacle", &obstacle);
    report(6, "rod", &rod);
    report(7, "solver-oracles", &solver_oracles);
    report(8, "structural-invariants", &structural);
    report(9, "affine-covariance", &affine_covariance);
    report(10, "constrained-hessian", &constrained_hessian);
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        return;
    }
    println!("acceptance: {failed} of 10 criteria failed");
    // the report above is the result; a failing exit status is opt-in
    if std::env::var_os("ACCEPTANCE_STRICT").is_some_and(|v| v == "1") {
        std::process::exit(1);
    }
}
