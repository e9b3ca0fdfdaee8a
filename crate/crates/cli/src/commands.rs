//! Command implementations. Each returns `Ok(true)` on pass, `Ok(false)` on a
//! check failure, and `Err` for usage, input or constraint errors.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use fermion_core::oracle::ORACLE_MAX_DIM;
use fermion_core::{
    bracket, clifford_product, evolve_observable, wedge, DeformationParameter, EvolutionSpec,
    Hamiltonian, Metric,
};

use crate::config::{ConfigError, ExperimentConfig};
use crate::random::{random_metric, rng};
use crate::suites::{identity_suite, oracle_sweep};

/// Largest RK4 step `evolve` takes; grid intervals are subdivided to match.
pub const MAX_STEP: f64 = 0.01;

/// Largest dimension accepted by `check-identities`.
pub const SUITE_MAX_DIM: usize = 6;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Config { path: PathBuf, source: ConfigError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Core(#[from] fermion_core::Error),
}

impl CliError {
    /// 2 for usage and input errors, 1 for constraint failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(_) => 1,
            _ => 2,
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum MetricSource {
    Identity,
    /// Seeded random SPD Gram matrix.
    Random,
    File(PathBuf),
}

impl FromStr for MetricSource {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "identity" => MetricSource::Identity,
            "random" => MetricSource::Random,
            path => MetricSource::File(PathBuf::from(path)),
        })
    }
}

impl fmt::Display for MetricSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricSource::Identity => f.write_str("identity"),
            MetricSource::Random => f.write_str("random"),
            MetricSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

/// Parses `dim` rows of `dim` whitespace-separated decimals; `#` comments.
pub fn parse_metric(text: &str, dim: usize) -> Result<Metric, String> {
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("line {}: {e}", k + 1))?;
        if row.len() != dim {
            return Err(format!(
                "line {}: expected {dim} entries, found {}",
                k + 1,
                row.len()
            ));
        }
        rows.push(row);
    }
    if rows.len() != dim {
        return Err(format!("expected {dim} rows, found {}", rows.len()));
    }
    Metric::new(&rows).map_err(|e| e.to_string())
}

pub fn resolve_metric(source: &MetricSource, dim: usize, seed: u64) -> Result<Metric, CliError> {
    match source {
        MetricSource::Identity => Ok(Metric::identity(dim)),
        MetricSource::Random => Ok(random_metric(&mut rng(!seed), dim)),
        MetricSource::File(path) => {
            parse_metric(&read(path)?, dim).or_else(|e| usage(format!("{}: {e}", path.display())))
        }
    }
}

pub fn check_identities(
    dim: usize,
    source: &MetricSource,
    trials: usize,
    seed: u64,
    tol: f64,
    out: &mut impl Write,
) -> Result<bool, CliError> {
    if dim == 0 || dim > SUITE_MAX_DIM {
        return usage(format!("--dim must be in 1..={SUITE_MAX_DIM}"));
    }
    if tol.is_nan() || tol < 0.0 {
        return usage("--tol must be non-negative");
    }
    let metric = resolve_metric(source, dim, seed)?;
    let res = identity_suite(&metric, trials, seed)?;
    let _ = writeln!(
        out,
        "identity suite: dim {dim}, metric {source}, {trials} trials, seed {seed}, tol {tol:e}"
    );
    let mut ok = true;
    for r in &res {
        let pass = r.passes(tol);
        ok &= pass;
        let verdict = if pass { "ok" } else { "FAIL" };
        let _ = writeln!(out, "  {:<26} {:>10.3e}  {verdict}", r.name, r.max);
    }
    Ok(ok)
}

fn load(path: &Path) -> Result<ExperimentConfig, CliError> {
    ExperimentConfig::parse(&read(path)?).map_err(|source| CliError::Config {
        path: path.to_path_buf(),
        source,
    })
}

/// Builds the evolution described by a config, with substeps chosen so the
/// RK4 step stays at or below [`MAX_STEP`].
pub fn evolution_spec(cfg: &ExperimentConfig) -> Result<EvolutionSpec, CliError> {
    let Some(grid) = cfg.time else {
        return usage("config has no `time` directive");
    };
    let Some(initial) = cfg.observables.first() else {
        return usage("config has no `observable` block");
    };
    let substeps = (grid.dt() / MAX_STEP).ceil().max(1.0) as usize;
    Ok(EvolutionSpec::new(
        cfg.metric(),
        Hamiltonian::Element(cfg.hamiltonian.clone()),
        initial.clone(),
        grid,
        cfg.mode,
    )
    .with_rate(cfg.rate)
    .with_hbar(cfg.hbar)
    .with_substeps(substeps))
}

pub fn evolve_csv(cfg: &ExperimentConfig) -> Result<String, CliError> {
    let spec = evolution_spec(cfg)?;
    let traj = evolve_observable(&spec)?;
    Ok(crate::csv::trajectory(&traj, &spec.metric)?)
}

pub fn evolve(config: &Path, out: &Path) -> Result<(), CliError> {
    let csv = evolve_csv(&load(config)?)?;
    write(out, &csv)
}

/// Parses a comma-separated list of non-negative reals.
pub fn parse_hbar_list(list: &str) -> Result<Vec<f64>, CliError> {
    list.split(',')
        .map(|t| match t.trim().parse::<f64>() {
            Ok(x) if x >= 0.0 && x.is_finite() => Ok(x),
            _ => usage(format!("invalid hbar value `{t}`")),
        })
        .collect()
}

pub fn deform_rows(
    cfg: &ExperimentConfig,
    hbars: &[f64],
) -> Result<Vec<(f64, f64, f64)>, CliError> {
    let Some(a) = cfg.observables.first() else {
        return usage("config has no `observable` block");
    };
    let b = cfg.observables.get(1).unwrap_or(a);
    let metric = cfg.metric();
    let w = wedge(a, b)?;
    let half = bracket(a, b, &metric)?.scale(0.5);
    hbars
        .iter()
        .map(|&h| {
            let ab = clifford_product(a, b, &metric, DeformationParameter::new(h)?)?;
            let diff = &ab - &w;
            let first = diff.add_scaled(&half, -h);
            Ok((h, diff.norm_inf(), first.norm_inf()))
        })
        .collect()
}

pub fn deform(config: &Path, hbars: &[f64], out: &Path) -> Result<(), CliError> {
    let rows = deform_rows(&load(config)?, hbars)?;
    write(out, &crate::csv::deformation(&rows))
}

pub fn oracle_compare(
    dim: usize,
    seed: u64,
    tol: f64,
    out: &mut impl Write,
) -> Result<bool, CliError> {
    if dim == 0 || dim > ORACLE_MAX_DIM {
        return usage(format!(
            "--dim must be in 1..={ORACLE_MAX_DIM} (oracle cap)"
        ));
    }
    let mut ok = true;
    for source in [MetricSource::Identity, MetricSource::Random] {
        let metric = resolve_metric(&source, dim, seed)?;
        let _ = writeln!(out, "oracle sweep: dim {dim}, metric {source}, seed {seed}");
        for d in oracle_sweep(&metric)? {
            let pass = d.max <= tol;
            ok &= pass;
            let kind = format!("{:?}", d.kind).to_lowercase();
            let pair = format!("{} x {}", d.pair.0.label(dim), d.pair.1.label(dim));
            let verdict = if pass { "ok" } else { "FAIL" };
            let _ = writeln!(
                out,
                "  {kind:<10} {:>10.3e}  worst {pair:<16} {verdict}",
                d.max
            );
        }
    }
    Ok(ok)
}
