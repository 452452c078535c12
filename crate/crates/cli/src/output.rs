//! CSV and metadata writers. All numbers use [`real`], so files are
//! byte-identical across reruns of the same configuration.

use std::fs;
use std::path::{Path, PathBuf};

use bundle_newton::fem1d::NodalCurve;
use bundle_newton::newton::OuterRecord;
use bundle_newton::problems::{ObstacleStage, RodState};

use crate::config::{real, Settings};
use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

pub const ITERATES_HEADER: [&str; 6] = [
    "outer_iter",
    "norm_dx_inf",
    "accepted_alpha",
    "inner_trials",
    "theta_final",
    "residual_inf",
];

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    csv::Writer::from_path(path).map_err(|source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    })
}

fn write_rows<I>(path: &Path, header: &[&str], rows: I) -> Result<PathBuf>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let wrap = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv_writer(path)?;
    w.write_record(header).map_err(wrap)?;
    for row in rows {
        w.write_record(&row).map_err(wrap)?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(path.to_path_buf())
}

fn optional(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

/// One row per outer iteration, numbered from 1 across all records.
/// `accepted_alpha` is empty for an iteration whose trials were all
/// rejected, `theta_final` for one taken without a contraction test.
pub fn write_iterates<'a, I>(dir: &Path, records: I) -> Result<PathBuf>
where
    I: IntoIterator<Item = &'a OuterRecord<f64>>,
{
    let rows = records.into_iter().enumerate().map(|(k, r)| {
        vec![
            (k + 1).to_string(),
            real(r.norm_dx),
            optional(r.accepted_alpha),
            r.inner_count().to_string(),
            optional(r.theta_final()),
            real(r.residual_norm),
        ]
    });
    write_rows(&dir.join("iterates.csv"), &ITERATES_HEADER, rows)
}

pub fn write_curve(dir: &Path, curve: &NodalCurve<f64>) -> Result<PathBuf> {
    let rows = curve.points.iter().enumerate().map(|(i, p)| {
        let mut row = vec![real(curve.grid.node(i))];
        row.extend(p.as_vec().0.iter().map(|x| real(*x)));
        row
    });
    write_rows(&dir.join("curve.csv"), &["t", "x", "y", "z"], rows)
}

/// The multiplier of interval `e` is written at its right node `e + 1`; the
/// first node repeats the first interval.
pub fn write_rod(dir: &Path, x: &RodState<f64>) -> Result<PathBuf> {
    let rows = (0..x.y.len()).map(|i| {
        let lambda = &x.lambda[i.saturating_sub(1)];
        let mut row = vec![real(x.grid.node(i))];
        for v in [&x.y[i], x.v[i].as_vec(), &lambda.coeffs] {
            row.extend(v.0.iter().map(|c| real(*c)));
        }
        row
    });
    let header = ["t", "x", "y", "z", "vx", "vy", "vz", "lx", "ly", "lz"];
    write_rows(&dir.join("curve.csv"), &header, rows)
}

pub fn write_stages(dir: &Path, stages: &[ObstacleStage<f64>]) -> Result<PathBuf> {
    let rows = stages.iter().enumerate().map(|(k, s)| {
        vec![
            (k + 1).to_string(),
            real(s.p),
            real(s.violation),
            s.trace.outer_count().to_string(),
            s.trace.terminated.to_string(),
        ]
    });
    let header = ["stage", "p", "violation", "outer_iterations", "terminated"];
    write_rows(&dir.join("stages.csv"), &header, rows)
}

pub fn write_meta(dir: &Path, settings: &Settings) -> Result<PathBuf> {
    let path = dir.join("meta.txt");
    fs::write(&path, settings.to_string()).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}
