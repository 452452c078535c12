use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use bundle_newton::Termination;
use bundle_newton_cli::{
    error_exit_code, exit_code, run, CliError, ProblemKind, RunConfig, Settings, EXIT_CONFIG,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

/// Damped Newton solvers for geodesics on the sphere and inextensible rods.
#[derive(Debug, Parser)]
#[command(name = "bundle-newton", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Elastic geodesic in a winding force field.
    GeodesicForce {
        #[command(flatten)]
        common: Common,
        /// Factor of the winding field.
        #[arg(long, allow_negative_numbers = true)]
        force_scale: Option<f64>,
        #[command(flatten)]
        ends: Ends,
    },
    /// Geodesic avoiding the polar cap `y3 > 1 - h_ref`, by penalty continuation.
    Obstacle {
        #[command(flatten)]
        common: Common,
        /// Height of the forbidden cap.
        #[arg(long)]
        h_ref: Option<f64>,
        /// Penalty of the first stage.
        #[arg(long)]
        p0: Option<f64>,
        /// Penalty factor between stages.
        #[arg(long)]
        p_growth: Option<f64>,
        /// Largest admissible cap violation.
        #[arg(long)]
        violation_tol: Option<f64>,
        /// Limit on penalty stages.
        #[arg(long)]
        max_stages: Option<usize>,
        #[command(flatten)]
        ends: Ends,
    },
    /// Inextensible elastic rod with clamped ends.
    Rod {
        #[command(flatten)]
        common: Common,
        /// Uniform flexural stiffness.
        #[arg(long)]
        sigma: Option<f64>,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Number of interior grid nodes.
    #[arg(long)]
    n: Option<usize>,
    /// Convergence threshold on the Newton step norm.
    #[arg(long)]
    tol: Option<f64>,
    /// Target contraction used to pick the next damping factor.
    #[arg(long)]
    theta_des: Option<f64>,
    /// Largest contraction at which a trial step is accepted.
    #[arg(long)]
    theta_acc: Option<f64>,
    /// Damping factor of the first trial.
    #[arg(long)]
    alpha0: Option<f64>,
    /// Damping factor below which the solve gives up.
    #[arg(long)]
    alpha_fail: Option<f64>,
    /// Limit on Newton iterations per solve.
    #[arg(long)]
    max_outer: Option<usize>,
    /// Limit on trial steps per Newton iteration.
    #[arg(long)]
    max_inner: Option<usize>,
    /// Recorded in `meta.txt`; no current problem draws random numbers.
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for the output files.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// `key=value` file read before the flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Ends {
    /// Start point as `x,y,z`; normalized.
    #[arg(long, allow_hyphen_values = true)]
    gamma0: Option<String>,
    /// End point as `x,y,z`; normalized.
    #[arg(long = "gamma-t", allow_hyphen_values = true)]
    gamma_t: Option<String>,
}

fn put(s: &mut Settings, key: &str, value: Option<impl Display>) {
    if let Some(v) = value {
        s.set(key, v.to_string());
    }
}

impl Common {
    fn apply(&self, s: &mut Settings) {
        put(s, "n", self.n);
        put(s, "tol", self.tol);
        put(s, "theta_des", self.theta_des);
        put(s, "theta_acc", self.theta_acc);
        put(s, "alpha0", self.alpha0);
        put(s, "alpha_fail", self.alpha_fail);
        put(s, "max_outer", self.max_outer);
        put(s, "max_inner", self.max_inner);
        put(s, "seed", self.seed);
        put(s, "out_dir", self.out_dir.as_ref().map(|p| p.display()));
    }
}

impl Ends {
    fn apply(&self, s: &mut Settings) {
        put(s, "gamma0", self.gamma0.as_ref());
        put(s, "gamma_t", self.gamma_t.as_ref());
    }
}

fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut flags = Settings::default();
    let (kind, common) = match &cli.command {
        Command::GeodesicForce {
            common,
            force_scale,
            ends,
        } => {
            put(&mut flags, "force_scale", *force_scale);
            ends.apply(&mut flags);
            (ProblemKind::GeodesicForce, common)
        }
        Command::Obstacle {
            common,
            h_ref,
            p0,
            p_growth,
            violation_tol,
            max_stages,
            ends,
        } => {
            put(&mut flags, "h_ref", *h_ref);
            put(&mut flags, "p0", *p0);
            put(&mut flags, "p_growth", *p_growth);
            put(&mut flags, "violation_tol", *violation_tol);
            put(&mut flags, "max_stages", *max_stages);
            ends.apply(&mut flags);
            (ProblemKind::Obstacle, common)
        }
        Command::Rod { common, sigma } => {
            put(&mut flags, "sigma", *sigma);
            (ProblemKind::Rod, common)
        }
    };
    common.apply(&mut flags);
    let mut settings = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
            Settings::parse(&text)
                .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?
        }
        None => Settings::default(),
    };
    settings.merge(flags);
    RunConfig::from_settings(Some(kind), &settings)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_CONFIG as u8),
            };
        }
    };
    let cfg = match resolve(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_exit_code(&e) as u8);
        }
    };
    let name = cfg.problem.kind();
    match run(&cfg) {
        Ok(report) => {
            let line = format!(
                "{name}: {} after {} outer iterations; output in {}",
                report.terminated,
                report.outer_iterations,
                cfg.out_dir.display()
            );
            if report.terminated == Termination::Converged {
                println!("{line}");
            } else {
                eprintln!("{line}");
                if let Some(d) = &report.diagnostic {
                    eprintln!("{name}: {d}");
                }
            }
            ExitCode::from(exit_code(report.terminated) as u8)
        }
        Err(e) => {
            eprintln!("error: {name}: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
