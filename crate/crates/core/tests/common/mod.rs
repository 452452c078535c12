#![allow(dead_code)]

use bundle_newton::fem1d::{Grid, NodalCurve};
use bundle_newton::geometry::{retract_sphere, tangent_basis, Covector3, UnitVec3, Vec3};
use bundle_newton::linalg::SystemMatrix;
use bundle_newton::newton::NewtonProblem;
use bundle_newton::problems::{CapPenalty, RodState};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit(v: [f64; 3]) -> UnitVec3<f64> {
    UnitVec3::from_f64(v).unwrap()
}

pub fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-scale..scale)).collect()
}

pub fn random_vec3(rng: &mut ChaCha8Rng, scale: f64) -> Vec3<f64> {
    Vec3::new(
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
    )
}

/// Moves every interior node of `curve` by a random tangent vector of size
/// up to `scale`.
pub fn perturb_curve(curve: &NodalCurve<f64>, rng: &mut ChaCha8Rng, scale: f64) -> NodalCurve<f64> {
    let mut out = curve.clone();
    let n = out.points.len();
    for p in out.points[1..n - 1].iter_mut() {
        let b = tangent_basis(p);
        let d = b.combine(&[rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)]);
        *p = retract_sphere(p, &d).unwrap();
    }
    out
}

/// Random rod state near `base`: positions and multipliers shifted, tangents
/// retracted.
pub fn perturb_rod(
    base: &RodState<f64>,
    rng: &mut ChaCha8Rng,
    scale: f64,
    lambda: f64,
) -> RodState<f64> {
    let mut out = base.clone();
    let n = out.y.len();
    for i in 1..n - 1 {
        out.y[i] += random_vec3(rng, scale);
        let b = tangent_basis(&out.v[i]);
        let d = b.combine(&[rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)]);
        out.v[i] = retract_sphere(&out.v[i], &d).unwrap();
    }
    for l in out.lambda.iter_mut() {
        *l = Covector3::new(random_vec3(rng, lambda));
    }
    out
}

/// Compares the assembled operator applied to `dir` with the central
/// difference of the transported residual along the retraction.
/// Returns `(max |fd - A dir|, max(|A dir|, |fd|))`.
pub fn fd_mismatch<P: NewtonProblem<f64>>(
    p: &P,
    x: &P::State,
    dir: &[f64],
    step: f64,
) -> (f64, f64) {
    let a = p.jacobian(x).unwrap();
    let ad = a.matvec(dir);
    let plus = p.retract(x, dir, step).unwrap();
    let minus = p.retract(x, dir, -step).unwrap();
    let rp = p.transported_residual(x, &plus).unwrap();
    let rm = p.transported_residual(x, &minus).unwrap();
    let mut err: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for k in 0..ad.len() {
        let fd = (rp[k] - rm[k]) / (2.0 * step);
        err = err.max((fd - ad[k]).abs());
        scale = scale.max(ad[k].abs()).max(fd.abs());
    }
    (err, scale)
}

/// Smallest distance of any node to the cap boundary, over the curve and
/// its two stencil neighbours; a sign change counts as distance zero.
pub fn kink_distance(cap: &CapPenalty<f64>, curves: &[&NodalCurve<f64>]) -> f64 {
    let n = curves[0].points.len();
    let mut d = f64::INFINITY;
    for i in 0..n {
        let cs: Vec<f64> = curves
            .iter()
            .map(|c| cap.constraint(c.points[i].as_vec()))
            .collect();
        let same_sign = cs.iter().all(|c| *c > 0.0) || cs.iter().all(|c| *c < 0.0);
        if !same_sign {
            return 0.0;
        }
        d = d.min(cs.iter().fold(f64::INFINITY, |m, c| m.min(c.abs())));
    }
    d
}

pub fn grid(n: usize) -> Grid<f64> {
    Grid::new(1.0, n).unwrap()
}
