//! Experiment configuration files.
//!
//! Flat `key = value` lines in TOML syntax. Comments start with `#`.
//!
//! | key                 | type            | default           |
//! |---------------------|-----------------|-------------------|
//! | `motion`            | string          | required: `linear`, `exponential`, `identity` |
//! | `beta`              | float > -1      | `0.2` (linear only) |
//! | `alpha_values`      | list of floats in (0, 1] | required |
//! | `ell_values`        | list of floats > 0 | required       |
//! | `anisotropy_ratios` | list of floats > 0 | `[1.0]`        |
//! | `x_min`, `x_max`    | float           | required          |
//! | `x_count`           | integer ≥ 2     | required          |
//! | `m`                 | integer ≥ 2     | `100`             |
//! | `families`          | list of strings | `["frac_material"]` |
//! | `output`            | path            | none              |
//! | `clamp_boundary`    | bool            | `false`           |
//! | `body_min`, `body_max` | 3 floats     | `[-10, -10, -10]`, `[10, 10, 10]` |

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::frac::{FracOrder, DEFAULT_SUBDIVISIONS};
use crate::kinematics::{split_by_ratio, BodyBox};
use crate::strains::StrainFamily;

pub const DEFAULT_BETA: f64 = 0.2;
pub const DEFAULT_BODY_HALF_WIDTH: f64 = 10.0;

/// One offending field and what is wrong with it.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub field: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration:\n{}", format_violations(.0))]
    Invalid(Vec<Violation>),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|v| format!("  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MotionId {
    Identity,
    Linear { beta: f64 },
    Exponential,
}

impl MotionId {
    pub fn name(&self) -> &'static str {
        match self {
            MotionId::Identity => "identity",
            MotionId::Linear { .. } => "linear",
            MotionId::Exponential => "exponential",
        }
    }

    /// Image of `[lo, hi]` on `axis`; every shipped motion is separable and
    /// increasing along each axis.
    pub fn map_range(&self, axis: usize, lo: f64, hi: f64) -> (f64, f64) {
        match (self, axis) {
            (MotionId::Linear { beta }, 0) => ((1.0 + beta) * lo, (1.0 + beta) * hi),
            (MotionId::Exponential, 0) => (lo.exp(), hi.exp()),
            _ => (lo, hi),
        }
    }
}

/// Uniform grid of `count` points on `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.max
                } else {
                    self.min + i as f64 * step
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub motion: MotionId,
    pub alpha_values: Vec<FracOrder>,
    pub ell_values: Vec<f64>,
    pub anisotropy_ratios: Vec<f64>,
    pub x_grid: Grid,
    pub m: usize,
    pub families: Vec<StrainFamily>,
    pub output: Option<PathBuf>,
    pub body: BodyBox,
    pub clamp_boundary: bool,
}

impl ExperimentConfig {
    /// Body box mapped into the current configuration.
    pub fn spatial_body(&self) -> BodyBox {
        let mut out = self.body;
        for axis in 0..3 {
            let (lo, hi) = self.motion.map_range(axis, self.body.min[axis], self.body.max[axis]);
            out.min[axis] = lo;
            out.max[axis] = hi;
        }
        out
    }

    /// Checks every horizon interval of the sweep against the body box, on
    /// both sides when a family needs the spatial gradient.
    fn boundary_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.clamp_boundary {
            return out;
        }
        let needs_spatial = self
            .families
            .iter()
            .any(|f| matches!(f, StrainFamily::FracSpatialBased | StrainFamily::AlphaBased));
        let mut sides = vec![("material", self.body, self.x_grid.min, self.x_grid.max)];
        if needs_spatial {
            let (lo, hi) = self.motion.map_range(0, self.x_grid.min, self.x_grid.max);
            sides.push(("spatial", self.spatial_body(), lo, hi));
        }
        for &ell in &self.ell_values {
            for &ratio in &self.anisotropy_ratios {
                let (left, right) = split_by_ratio(ell, ratio);
                for (side, body, lo, hi) in &sides {
                    // axis 0 spans the grid, the transverse axes sit at 0
                    for (axis, (a, b)) in [(*lo, *hi), (0.0, 0.0), (0.0, 0.0)].into_iter().enumerate() {
                        if a - left < body.min[axis] || b + right > body.max[axis] {
                            out.push(Violation {
                                field: "body_min/body_max".into(),
                                message: format!(
                                    "{side} horizon ({:.6}, {:.6}) on axis {axis} for ell = {ell}, ratio = {ratio} leaves the body [{}, {}]; enlarge the box or set clamp_boundary = true",
                                    a - left,
                                    b + right,
                                    body.min[axis],
                                    body.max[axis]
                                ),
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    motion: Option<String>,
    beta: Option<f64>,
    alpha_values: Option<Vec<f64>>,
    ell_values: Option<Vec<f64>>,
    anisotropy_ratios: Option<Vec<f64>>,
    x_min: Option<f64>,
    x_max: Option<f64>,
    x_count: Option<i64>,
    m: Option<i64>,
    families: Option<Vec<String>>,
    output: Option<PathBuf>,
    clamp_boundary: Option<bool>,
    body_min: Option<Vec<f64>>,
    body_max: Option<Vec<f64>>,
}

pub fn parse_config(path: &Path) -> Result<ExperimentConfig, ConfigError> {
    parse_config_with_clamp(path, false)
}

/// As [`parse_config`], with `force_clamp` overriding `clamp_boundary`
/// before the horizons are checked against the body.
pub fn parse_config_with_clamp(path: &Path, force_clamp: bool) -> Result<ExperimentConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text, force_clamp)
}

pub fn parse_config_str(text: &str) -> Result<ExperimentConfig, ConfigError> {
    parse(text, false)
}

fn parse(text: &str, force_clamp: bool) -> Result<ExperimentConfig, ConfigError> {
    let mut raw: RawConfig =
        toml::from_str(text).map_err(|e| ConfigError::Parse(describe(text, &e)))?;
    if force_clamp {
        raw.clamp_boundary = Some(true);
    }
    validate(raw)
}

fn describe(text: &str, err: &toml::de::Error) -> String {
    match err.span() {
        Some(span) => {
            let line = text[..span.start.min(text.len())].matches('\n').count() + 1;
            format!("line {line}: {}", err.message())
        }
        None => err.message().to_string(),
    }
}

fn violation(out: &mut Vec<Violation>, field: &str, message: impl Into<String>) {
    out.push(Violation {
        field: field.to_string(),
        message: message.into(),
    });
}

fn positive_list(
    out: &mut Vec<Violation>,
    field: &str,
    values: Option<Vec<f64>>,
    default: Option<Vec<f64>>,
) -> Vec<f64> {
    let Some(values) = values.or(default) else {
        violation(out, field, "missing");
        return Vec::new();
    };
    if values.is_empty() {
        violation(out, field, "must not be empty");
    }
    for v in &values {
        if !(v.is_finite() && *v > 0.0) {
            violation(out, field, format!("{v} is not a positive number"));
        }
    }
    values
}

fn vec3(out: &mut Vec<Violation>, field: &str, v: Option<Vec<f64>>, default: f64) -> [f64; 3] {
    match v {
        None => [default; 3],
        Some(v) if v.len() == 3 && v.iter().all(|x| x.is_finite()) => [v[0], v[1], v[2]],
        Some(v) => {
            violation(out, field, format!("expected three finite numbers, got {v:?}"));
            [default; 3]
        }
    }
}

fn validate(raw: RawConfig) -> Result<ExperimentConfig, ConfigError> {
    let mut errs = Vec::new();

    let motion = match raw.motion.as_deref() {
        Some("identity") => MotionId::Identity,
        Some("exponential") => MotionId::Exponential,
        Some("linear") => {
            let beta = raw.beta.unwrap_or(DEFAULT_BETA);
            if !(beta.is_finite() && beta > -1.0) {
                violation(&mut errs, "beta", format!("{beta} must exceed -1"));
            }
            MotionId::Linear { beta }
        }
        Some(other) => {
            violation(
                &mut errs,
                "motion",
                format!("unknown motion `{other}` (expected linear, exponential or identity)"),
            );
            MotionId::Identity
        }
        None => {
            violation(&mut errs, "motion", "missing");
            MotionId::Identity
        }
    };
    if raw.beta.is_some() && !matches!(motion, MotionId::Linear { .. }) {
        violation(&mut errs, "beta", "only meaningful for the linear motion");
    }

    let mut alpha_values = Vec::new();
    match raw.alpha_values {
        None => violation(&mut errs, "alpha_values", "missing"),
        Some(v) if v.is_empty() => violation(&mut errs, "alpha_values", "must not be empty"),
        Some(v) => {
            for a in v {
                match FracOrder::new(a) {
                    Ok(o) => alpha_values.push(o),
                    Err(_) => violation(&mut errs, "alpha_values", format!("{a} is outside (0, 1]")),
                }
            }
        }
    }

    let ell_values = positive_list(&mut errs, "ell_values", raw.ell_values, None);
    let anisotropy_ratios =
        positive_list(&mut errs, "anisotropy_ratios", raw.anisotropy_ratios, Some(vec![1.0]));

    let x_min = raw.x_min.unwrap_or_else(|| {
        violation(&mut errs, "x_min", "missing");
        0.0
    });
    let x_max = raw.x_max.unwrap_or_else(|| {
        violation(&mut errs, "x_max", "missing");
        1.0
    });
    if raw.x_min.is_some() && raw.x_max.is_some() && !(x_min < x_max) {
        violation(&mut errs, "x_max", format!("must exceed x_min ({x_max} <= {x_min})"));
    }
    let x_count = match raw.x_count {
        None => {
            violation(&mut errs, "x_count", "missing");
            2
        }
        Some(n) if n < 2 => {
            violation(&mut errs, "x_count", format!("{n} is below 2"));
            2
        }
        Some(n) => n as usize,
    };

    let m = match raw.m {
        None => DEFAULT_SUBDIVISIONS,
        Some(m) if m < 2 => {
            violation(&mut errs, "m", format!("{m} is below 2"));
            DEFAULT_SUBDIVISIONS
        }
        Some(m) => m as usize,
    };

    let mut families = Vec::new();
    for name in raw.families.unwrap_or_else(|| vec!["frac_material".into()]) {
        match name.parse::<StrainFamily>() {
            Ok(f) if !families.contains(&f) => families.push(f),
            Ok(f) => violation(&mut errs, "families", format!("duplicate family `{f}`")),
            Err(e) => violation(&mut errs, "families", e),
        }
    }
    if families.is_empty() {
        violation(&mut errs, "families", "must not be empty");
    }

    let body_min = vec3(&mut errs, "body_min", raw.body_min, -DEFAULT_BODY_HALF_WIDTH);
    let body_max = vec3(&mut errs, "body_max", raw.body_max, DEFAULT_BODY_HALF_WIDTH);
    let body = BodyBox::new(body_min, body_max).unwrap_or_else(|e| {
        violation(&mut errs, "body_min/body_max", e.to_string());
        BodyBox::unbounded()
    });
    if (x_min < body.min[0] || x_max > body.max[0]) && body.min[0] < body.max[0] {
        violation(&mut errs, "x_min/x_max", "grid lies outside the body box");
    }

    let config = ExperimentConfig {
        motion,
        alpha_values,
        ell_values,
        anisotropy_ratios,
        x_grid: Grid {
            min: x_min,
            max: x_max,
            count: x_count,
        },
        m,
        families,
        output: raw.output,
        body,
        clamp_boundary: raw.clamp_boundary.unwrap_or(false),
    };
    if errs.is_empty() {
        errs.extend(config.boundary_violations());
    }
    if errs.is_empty() {
        Ok(config)
    } else {
        Err(ConfigError::Invalid(errs))
    }
}
