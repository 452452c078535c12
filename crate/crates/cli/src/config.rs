//! Run configuration.
//!
//! Every source of parameters, whether a config file or command-line flags,
//! is first reduced to a flat [`Settings`] map of `key=value` strings.
//! [`RunConfig::from_settings`] is the only place that interprets them, so
//! a file written by [`RunConfig::to_settings`] reproduces the run exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use bundle_newton::geometry::{UnitVec3, Vec3};
use bundle_newton::problems::{default_geodesic_boundary, default_obstacle_boundary, RodBoundary};
use bundle_newton::NewtonConfig;

use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

/// Keys under this prefix are outputs; they are ignored when reading.
pub const RESULT_PREFIX: &str = "result.";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    GeodesicForce,
    Obstacle,
    Rod,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::GeodesicForce => "geodesic-force",
            ProblemKind::Obstacle => "obstacle",
            ProblemKind::Rod => "rod",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            ProblemKind::GeodesicForce => &["force_scale", "gamma0", "gamma_t"],
            ProblemKind::Obstacle => &[
                "h_ref",
                "p0",
                "p_growth",
                "violation_tol",
                "max_stages",
                "gamma0",
                "gamma_t",
            ],
            ProblemKind::Rod => &["sigma", "y_start", "y_end", "v_start", "v_end"],
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "geodesic-force" => Ok(ProblemKind::GeodesicForce),
            "obstacle" => Ok(ProblemKind::Obstacle),
            "rod" => Ok(ProblemKind::Rod),
            _ => Err(CliError::config(format!("unknown problem `{s}`"))),
        }
    }
}

const COMMON_KEYS: &[&str] = &[
    "problem",
    "n",
    "out_dir",
    "seed",
    "tol",
    "theta_des",
    "theta_acc",
    "alpha0",
    "alpha_fail",
    "max_outer",
    "max_inner",
];

/// Flat `key=value` parameters, in key order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings(BTreeMap<String, String>);

impl Settings {
    /// Parses `key=value` lines. Blank lines and lines starting with `#`
    /// are skipped, and keys may not repeat.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(format!(
                    "line {}: expected key=value",
                    k + 1
                )));
            };
            let key = key.trim();
            if key.is_empty() {
                return Err(CliError::config(format!("line {}: empty key", k + 1)));
            }
            if map
                .insert(key.to_string(), value.trim().to_string())
                .is_some()
            {
                return Err(CliError::config(format!(
                    "line {}: duplicate key `{key}`",
                    k + 1
                )));
            }
        }
        Ok(Settings(map))
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.0.insert(key.to_string(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    /// Entries of `other` replace those of `self`.
    pub fn merge(&mut self, other: Settings) {
        self.0.extend(other.0);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

impl fmt::Display for Settings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.iter() {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemConfig {
    GeodesicForce {
        force_scale: f64,
        gamma0: UnitVec3<f64>,
        gamma_t: UnitVec3<f64>,
    },
    Obstacle {
        h_ref: f64,
        p0: f64,
        p_growth: f64,
        violation_tol: f64,
        max_stages: usize,
        gamma0: UnitVec3<f64>,
        gamma_t: UnitVec3<f64>,
    },
    Rod {
        /// Uniform flexural stiffness.
        sigma: f64,
        boundary: RodBoundary<f64>,
    },
}

impl ProblemConfig {
    pub fn kind(&self) -> ProblemKind {
        match self {
            ProblemConfig::GeodesicForce { .. } => ProblemKind::GeodesicForce,
            ProblemConfig::Obstacle { .. } => ProblemKind::Obstacle,
            ProblemConfig::Rod { .. } => ProblemKind::Rod,
        }
    }
}

/// Fully resolved parameters of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Number of interior grid nodes.
    pub n: usize,
    pub newton: NewtonConfig<f64>,
    pub problem: ProblemConfig,
    pub out_dir: PathBuf,
    /// Recorded for reproducibility; the solvers themselves are deterministic.
    pub seed: u64,
}

impl RunConfig {
    /// Default parameters for `kind`.
    pub fn defaults(kind: ProblemKind) -> Self {
        let problem = match kind {
            ProblemKind::GeodesicForce => {
                let (gamma0, gamma_t) = default_geodesic_boundary();
                ProblemConfig::GeodesicForce {
                    force_scale: 3.0,
                    gamma0,
                    gamma_t,
                }
            }
            ProblemKind::Obstacle => {
                let (gamma0, gamma_t) = default_obstacle_boundary();
                ProblemConfig::Obstacle {
                    h_ref: 0.1,
                    p0: 1.0,
                    p_growth: 1.2,
                    violation_tol: 1e-3,
                    max_stages: 200,
                    gamma0,
                    gamma_t,
                }
            }
            ProblemKind::Rod => ProblemConfig::Rod {
                sigma: 1.0,
                boundary: RodBoundary::reference(),
            },
        };
        RunConfig {
            n: 100,
            newton: NewtonConfig::default(),
            problem,
            out_dir: PathBuf::from("out"),
            seed: 0,
        }
    }

    /// Resolves `settings` on top of the defaults. `kind` wins over a
    /// `problem` key; one of the two must be present.
    pub fn from_settings(kind: Option<ProblemKind>, settings: &Settings) -> Result<Self> {
        let kind = match (kind, settings.get("problem")) {
            (Some(k), _) => k,
            (None, Some(name)) => name.parse()?,
            (None, None) => return Err(CliError::config("no problem given")),
        };
        for (key, _) in settings.iter() {
            let known = COMMON_KEYS.contains(&key) || kind.keys().contains(&key);
            if !known && !key.starts_with(RESULT_PREFIX) {
                return Err(CliError::config(format!(
                    "unknown key `{key}` for problem {kind}"
                )));
            }
        }
        let r = Reader(settings);
        let mut cfg = RunConfig::defaults(kind);
        r.num("n", &mut cfg.n)?;
        r.num("seed", &mut cfg.seed)?;
        if let Some(dir) = settings.get("out_dir") {
            cfg.out_dir = PathBuf::from(dir);
        }
        let nc = &mut cfg.newton;
        r.num("tol", &mut nc.tol)?;
        r.num("theta_des", &mut nc.theta_des)?;
        r.num("theta_acc", &mut nc.theta_acc)?;
        r.num("alpha0", &mut nc.alpha0)?;
        r.num("alpha_fail", &mut nc.alpha_fail)?;
        r.num("max_outer", &mut nc.max_outer)?;
        r.num("max_inner", &mut nc.max_inner)?;
        match &mut cfg.problem {
            ProblemConfig::GeodesicForce {
                force_scale,
                gamma0,
                gamma_t,
            } => {
                r.num("force_scale", force_scale)?;
                r.unit("gamma0", gamma0)?;
                r.unit("gamma_t", gamma_t)?;
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
                r.num("h_ref", h_ref)?;
                r.num("p0", p0)?;
                r.num("p_growth", p_growth)?;
                r.num("violation_tol", violation_tol)?;
                r.num("max_stages", max_stages)?;
                r.unit("gamma0", gamma0)?;
                r.unit("gamma_t", gamma_t)?;
            }
            ProblemConfig::Rod { sigma, boundary } => {
                r.num("sigma", sigma)?;
                r.vec("y_start", &mut boundary.y_start)?;
                r.vec("y_end", &mut boundary.y_end)?;
                r.unit("v_start", &mut boundary.v_start)?;
                r.unit("v_end", &mut boundary.v_end)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks the parameters that no solver constructor checks.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(CliError::config("n must be at least 1"));
        }
        self.newton
            .validate()
            .map_err(|e| CliError::config(e.to_string()))?;
        match &self.problem {
            ProblemConfig::GeodesicForce { force_scale, .. } if !force_scale.is_finite() => {
                Err(CliError::config("force_scale must be finite"))
            }
            ProblemConfig::Rod { sigma, .. } if !(*sigma > 0.0 && sigma.is_finite()) => Err(
                CliError::config(format!("sigma must be positive, got {sigma}")),
            ),
            _ => Ok(()),
        }
    }

    /// Every resolved parameter, numbers with 17 significant digits.
    pub fn to_settings(&self) -> Settings {
        let mut s = Settings::default();
        s.set("problem", self.problem.kind().name());
        s.set("n", self.n.to_string());
        s.set("seed", self.seed.to_string());
        s.set("out_dir", self.out_dir.display().to_string());
        let nc = &self.newton;
        s.set("tol", real(nc.tol));
        s.set("theta_des", real(nc.theta_des));
        s.set("theta_acc", real(nc.theta_acc));
        s.set("alpha0", real(nc.alpha0));
        s.set("alpha_fail", real(nc.alpha_fail));
        s.set("max_outer", nc.max_outer.to_string());
        s.set("max_inner", nc.max_inner.to_string());
        match &self.problem {
            ProblemConfig::GeodesicForce {
                force_scale,
                gamma0,
                gamma_t,
            } => {
                s.set("force_scale", real(*force_scale));
                s.set("gamma0", vector(gamma0.as_vec()));
                s.set("gamma_t", vector(gamma_t.as_vec()));
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
                s.set("h_ref", real(*h_ref));
                s.set("p0", real(*p0));
                s.set("p_growth", real(*p_growth));
                s.set("violation_tol", real(*violation_tol));
                s.set("max_stages", max_stages.to_string());
                s.set("gamma0", vector(gamma0.as_vec()));
                s.set("gamma_t", vector(gamma_t.as_vec()));
            }
            ProblemConfig::Rod { sigma, boundary } => {
                s.set("sigma", real(*sigma));
                s.set("y_start", vector(&boundary.y_start));
                s.set("y_end", vector(&boundary.y_end));
                s.set("v_start", vector(boundary.v_start.as_vec()));
                s.set("v_end", vector(boundary.v_end.as_vec()));
            }
        }
        s
    }
}

/// Lossless decimal form of `x`.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn vector(v: &Vec3<f64>) -> String {
    v.0.iter().map(|x| real(*x)).collect::<Vec<_>>().join(",")
}

struct Reader<'a>(&'a Settings);

impl Reader<'_> {
    fn num<N: FromStr>(&self, key: &str, out: &mut N) -> Result<()> {
        if let Some(raw) = self.0.get(key) {
            *out = raw
                .parse()
                .map_err(|_| CliError::config(format!("{key}: cannot parse `{raw}`")))?;
        }
        Ok(())
    }

    fn vec(&self, key: &str, out: &mut Vec3<f64>) -> Result<()> {
        if let Some(raw) = self.0.get(key) {
            *out = parse_vec3(raw).map_err(|msg| CliError::config(format!("{key}: {msg}")))?;
        }
        Ok(())
    }

    /// Reads a direction. Vectors that are unit to rounding accuracy are
    /// taken as they are, so that written values read back bit for bit;
    /// anything else is normalized.
    fn unit(&self, key: &str, out: &mut UnitVec3<f64>) -> Result<()> {
        let mut v = Vec3::zero();
        if self.0.get(key).is_none() {
            return Ok(());
        }
        self.vec(key, &mut v)?;
        let norm = v.norm();
        *out = if (norm - 1.0).abs() <= 4.0 * f64::EPSILON {
            UnitVec3::new_unchecked(v)
        } else {
            UnitVec3::normalize(v).map_err(|e| CliError::config(format!("{key}: {e}")))?
        };
        Ok(())
    }
}

/// Parses `x,y,z`.
pub fn parse_vec3(raw: &str) -> std::result::Result<Vec3<f64>, String> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected three comma-separated numbers, got `{raw}`"
        ));
    }
    let mut out = [0.0f64; 3];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.parse().map_err(|_| format!("cannot parse `{p}`"))?;
        if !o.is_finite() {
            return Err(format!("`{p}` is not finite"));
        }
    }
    Ok(Vec3(out))
}
