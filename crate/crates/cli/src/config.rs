//! Run configuration: a TOML file with `[system]`, `[pair.<i>]`, `[grid]`,
//! `[solver]`, `[output]` and `[units]` sections.
//!
//! Pair `i` is the interaction between the two particles other than `i`.
//! Unknown keys are rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use zerorange_core::units::DEFAULT_MASS_SCALE;
use zerorange_core::{LogGrid, PairParams, ParticleSystem, QConvention, UnitSystem};

/// Keys without a default.
pub const REQUIRED_KEYS: [&str; 4] = [
    "system.masses",
    "pair.0.scattering_length",
    "pair.1.scattering_length",
    "pair.2.scattering_length",
];

pub const BUNDLED: [(&str, &str); 2] = [
    ("he4_trimer", include_str!("../configs/he4_trimer.toml")),
    ("he4he4he3", include_str!("../configs/he4he4he3.toml")),
];

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    Parse { line: usize, message: String },
    Missing(Vec<String>),
    Invalid { field: String, reason: String },
    Io { path: String, message: String },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Parse { line, message } => write!(f, "line {line}: {message}"),
            ConfigError::Missing(keys) => write!(f, "missing required keys: {}", keys.join(", ")),
            ConfigError::Invalid { field, reason } => write!(f, "invalid {field}: {reason}"),
            ConfigError::Io { path, message } => write!(f, "cannot read {path}: {message}"),
        }
    }
}

impl std::error::Error for ConfigError {}

fn invalid(field: impl Into<String>, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field: field.into(),
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(invalid("output.format", format!("expected csv or json, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub rho_min: f64,
    pub rho_max: f64,
    pub n: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn nodes(&self) -> Vec<f64> {
        let last = (self.n - 1) as f64;
        let mut nodes: Vec<f64> = (0..self.n)
            .map(|k| {
                let s = k as f64 / last;
                match self.spacing {
                    Spacing::Log => self.rho_min * (self.rho_max / self.rho_min).powf(s),
                    Spacing::Linear => self.rho_min + (self.rho_max - self.rho_min) * s,
                }
            })
            .collect();
        nodes[self.n - 1] = self.rho_max;
        nodes
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverSpec {
    pub q_convention: QConvention,
    pub regularized: bool,
    pub radial_points: usize,
    pub max_states: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub format: Option<Format>,
    pub path: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub name: String,
    pub particles: [String; 3],
    pub system: ParticleSystem,
    pub grid: GridSpec,
    pub solver: SolverSpec,
    pub output: OutputSpec,
    /// SHA-256 of the configuration text, hex encoded.
    pub sha256: String,
}

impl RunConfig {
    /// Radial grid over the configured range.
    pub fn radial_grid(&self) -> LogGrid {
        LogGrid::new(self.grid.rho_min, self.grid.rho_max, self.solver.radial_points)
            .expect("validated at parse time")
    }

    /// Bundled configuration by name, or a file path.
    pub fn load(source: &str) -> Result<Self, ConfigError> {
        if let Some((_, text)) = BUNDLED.iter().find(|(name, _)| *name == source) {
            return parse_config(text);
        }
        let text = std::fs::read_to_string(source).map_err(|e| ConfigError::Io {
            path: source.to_string(),
            message: e.to_string(),
        })?;
        parse_config(&text)
    }
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    system: Option<RawSystem>,
    #[serde(default)]
    pair: BTreeMap<String, RawPair>,
    grid: Option<RawGrid>,
    solver: Option<RawSolver>,
    output: Option<RawOutput>,
    units: Option<RawUnits>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    name: Option<String>,
    particles: Option<[String; 3]>,
    masses: Option<Vec<f64>>,
    mass_scale: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    scattering_length: Option<f64>,
    effective_range: Option<f64>,
    shape: Option<f64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    rho_min: Option<f64>,
    rho_max: Option<f64>,
    n: Option<i64>,
    spacing: Option<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    q_convention: Option<String>,
    regularized: Option<bool>,
    radial_points: Option<i64>,
    max_states: Option<i64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    format: Option<String>,
    path: Option<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawUnits {
    #[serde(rename = "hartree_per_mK")]
    hartree_per_mk: Option<f64>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn positive_count(value: i64, field: &str, min: i64) -> Result<usize, ConfigError> {
    if value < min {
        return Err(invalid(field, format!("must be at least {min}")));
    }
    Ok(value as usize)
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.span().map_or(1, |s| line_of(text, s.start)),
        message: e.message().to_string(),
    })?;

    let mut missing = Vec::new();
    let masses = raw.system.as_ref().and_then(|s| s.masses.clone());
    if masses.is_none() {
        missing.push(REQUIRED_KEYS[0].to_string());
    }
    for key in raw.pair.keys() {
        if !matches!(key.as_str(), "0" | "1" | "2") {
            return Err(invalid(format!("pair.{key}"), "pairs are indexed 0, 1, 2"));
        }
    }
    for i in 0..3 {
        if raw.pair.get(&i.to_string()).and_then(|p| p.scattering_length).is_none() {
            missing.push(REQUIRED_KEYS[1 + i].to_string());
        }
    }
    if !missing.is_empty() {
        return Err(ConfigError::Missing(missing));
    }

    let sys = raw.system.as_ref().expect("checked above");
    let masses = masses.expect("checked above");
    let masses: [f64; 3] = masses
        .try_into()
        .map_err(|_| invalid("system.masses", "expected three masses"))?;
    if masses.iter().any(|m| !(m.is_finite() && *m > 0.0)) {
        return Err(invalid("system.masses", "masses must be positive"));
    }

    let mut units = UnitSystem::default();
    if let Some(h) = raw.units.as_ref().and_then(|u| u.hartree_per_mk) {
        units = UnitSystem::new(h, units.mass_scale())
            .map_err(|e| invalid("units.hartree_per_mK", e.to_string()))?;
    }
    units = units
        .with_mass_scale(sys.mass_scale.unwrap_or(DEFAULT_MASS_SCALE))
        .map_err(|e| invalid("system.mass_scale", e.to_string()))?;

    let mut pairs = [PairParams::zero_range(-1.0).expect("valid"); 3];
    for (i, slot) in pairs.iter_mut().enumerate() {
        let p = &raw.pair[&i.to_string()];
        *slot = PairParams::new(
            p.scattering_length.expect("checked above"),
            p.effective_range.unwrap_or(0.0),
            p.shape.unwrap_or(0.0),
        )
        .map_err(|e| invalid(format!("pair.{i}"), e.to_string()))?;
    }
    let system = ParticleSystem::new(masses, pairs, units).map_err(|e| invalid("system", e.to_string()))?;

    let grid = raw.grid.unwrap_or_default();
    let longest = pairs
        .iter()
        .map(|p| p.scattering_length.abs())
        .filter(|a| a.is_finite())
        .fold(0.0, f64::max);
    let default_grid = LogGrid::default_for(longest);
    let grid = GridSpec {
        rho_min: grid.rho_min.unwrap_or(default_grid.rho_min()),
        rho_max: grid.rho_max.unwrap_or(default_grid.rho_max()),
        n: positive_count(grid.n.unwrap_or(1500), "grid.n", 2)?,
        spacing: match grid.spacing.as_deref().unwrap_or("log") {
            "log" => Spacing::Log,
            "linear" => Spacing::Linear,
            other => return Err(invalid("grid.spacing", format!("expected log or linear, got {other:?}"))),
        },
    };
    if !(grid.rho_min > 0.0 && grid.rho_max.is_finite()) {
        return Err(invalid("grid.rho_min", "must be positive"));
    }
    if !(grid.rho_min < grid.rho_max) {
        return Err(invalid("grid.rho_max", "must exceed grid.rho_min"));
    }

    let solver = raw.solver.unwrap_or_default();
    let solver = SolverSpec {
        q_convention: match solver.q_convention.as_deref().unwrap_or("leading_term") {
            "leading_term" => QConvention::LeadingTerm,
            "none" => QConvention::None,
            other => {
                return Err(invalid(
                    "solver.q_convention",
                    format!("expected leading_term or none, got {other:?}"),
                ))
            }
        },
        regularized: solver.regularized.unwrap_or(true),
        radial_points: positive_count(solver.radial_points.unwrap_or(8000), "solver.radial_points", 16)?,
        max_states: positive_count(solver.max_states.unwrap_or(10), "solver.max_states", 1)?,
    };

    let output = raw.output.unwrap_or_default();
    let output = OutputSpec {
        format: output.format.as_deref().map(Format::from_str).transpose()?,
        path: output.path,
    };

    let digest = Sha256::digest(text.as_bytes());
    let sha256 = digest.iter().map(|b| format!("{b:02x}")).collect();

    Ok(RunConfig {
        name: sys.name.clone().unwrap_or_else(|| "system".to_string()),
        particles: sys
            .particles
            .clone()
            .unwrap_or_else(|| ["1".to_string(), "2".to_string(), "3".to_string()]),
        system,
        grid,
        solver,
        output,
        sha256,
    })
}
