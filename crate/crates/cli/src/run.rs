use std::fs;
use std::path::{Path, PathBuf};

use bundle_newton::fem1d::Grid;
use bundle_newton::newton::{damped_newton, NewtonProblem, Termination};
use bundle_newton::problems::{
    geodesic_force_problem, obstacle_path_follow, NoForce, ObstacleProblem, RodProblem,
};

use crate::config::{real, ProblemConfig, RunConfig};
use crate::error::CliError;
use crate::output;

/// Exit status for a failed configuration.
pub const EXIT_CONFIG: i32 = 4;
/// Exit status for any other error.
pub const EXIT_OTHER: i32 = 1;

pub fn exit_code(t: Termination) -> i32 {
    match t {
        Termination::Converged => 0,
        Termination::DampingFailed => 2,
        Termination::MaxIterations => 3,
    }
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

pub fn error_exit_code(e: &CliError) -> i32 {
    match e {
        CliError::Config(_) => EXIT_CONFIG,
        _ => EXIT_OTHER,
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub terminated: Termination,
    /// Outer iterations over all Newton solves of the run.
    pub outer_iterations: usize,
    pub diagnostic: Option<String>,
    pub files: Vec<PathBuf>,
}

/// Solves the configured problem and writes `iterates.csv`, `curve.csv`,
/// `meta.txt` and, for the obstacle, `stages.csv` into `cfg.out_dir`.
///
/// Outputs are written whatever the termination; errors are returned only
/// for invalid input, numerical breakdown and I/O failures.
pub fn run(cfg: &RunConfig) -> Result<RunReport, CliError> {
    cfg.validate()?;
    let grid = Grid::new(1.0, cfg.n).map_err(|e| CliError::solve("grid", e))?;
    let dir = &cfg.out_dir;
    let mut meta = cfg.to_settings();
    let mut files = Vec::new();
    let (terminated, outer_iterations, diagnostic) = match &cfg.problem {
        ProblemConfig::GeodesicForce {
            force_scale,
            gamma0,
            gamma_t,
        } => {
            let stage = "geodesic-force";
            let p = geodesic_force_problem(cfg.n, *gamma0, *gamma_t, *force_scale)
                .map_err(|e| CliError::solve(stage, e))?;
            let x0 = p.initial_curve().map_err(|e| CliError::solve(stage, e))?;
            let out = damped_newton(&p, x0, &cfg.newton).map_err(|e| CliError::solve(stage, e))?;
            ensure_dir(dir)?;
            files.push(output::write_iterates(dir, &out.trace.iterations)?);
            files.push(output::write_curve(dir, &out.state)?);
            if let Some(last) = out.trace.iterations.last() {
                meta.set("result.final_norm_dx", real(last.norm_dx));
            }
            (out.trace.terminated, out.trace.outer_count(), None)
        }
        ProblemConfig::Obstacle {
            h_ref,
            p0,
            p_growth,
            violation_tol,
            max_stages,
            gamma0,
            gamma_t,
        } => {
            let mut o = ObstacleProblem::new(grid, *gamma0, *gamma_t, *h_ref)
                .map_err(|e| CliError::solve("obstacle", e))?;
            o.p0 = *p0;
            o.p_growth = *p_growth;
            o.violation_tol = *violation_tol;
            o.max_stages = *max_stages;
            let out = obstacle_path_follow(&o, None, &cfg.newton)
                .map_err(|e| CliError::solve("obstacle path following", e))?;
            ensure_dir(dir)?;
            let records = out.stages.iter().flat_map(|s| &s.trace.iterations);
            files.push(output::write_iterates(dir, records)?);
            files.push(output::write_curve(dir, &out.curve)?);
            files.push(output::write_stages(dir, &out.stages)?);
            let top = out
                .curve
                .points
                .iter()
                .map(|p| p.get(2))
                .fold(f64::NEG_INFINITY, f64::max);
            meta.set("result.stages", out.stages.len().to_string());
            meta.set("result.final_p", real(out.final_p));
            meta.set("result.final_violation", real(out.final_violation));
            meta.set("result.max_y3", real(top));
            let outer = out.stages.iter().map(|s| s.trace.outer_count()).sum();
            (out.terminated, outer, out.diagnostic)
        }
        ProblemConfig::Rod { sigma, boundary } => {
            let stage = "rod";
            let p = RodProblem::with_uniform_stiffness(grid, *boundary, *sigma, NoForce)
                .map_err(|e| CliError::solve(stage, e))?;
            let x0 = p.initial_guess().map_err(|e| CliError::solve(stage, e))?;
            let out = damped_newton(&p, x0, &cfg.newton).map_err(|e| CliError::solve(stage, e))?;
            ensure_dir(dir)?;
            files.push(output::write_iterates(dir, &out.trace.iterations)?);
            files.push(output::write_rod(dir, &out.state)?);
            if let Some(last) = out.trace.iterations.last() {
                meta.set("result.final_norm_dx", real(last.norm_dx));
            }
            meta.set(
                "result.constraint_violation",
                real(p.constraint_violation(&out.state)),
            );
            meta.set("result.dof_count", p.dof_count().to_string());
            (out.trace.terminated, out.trace.outer_count(), None)
        }
    };

    meta.set("result.terminated", terminated.as_str());
    meta.set("result.outer_iterations", outer_iterations.to_string());
    if let Some(d) = &diagnostic {
        meta.set("result.diagnostic", d.replace('\n', " "));
    }
    files.push(output::write_meta(dir, &meta)?);
    Ok(RunReport {
        terminated,
        outer_iterations,
        diagnostic,
        files,
    })
}
