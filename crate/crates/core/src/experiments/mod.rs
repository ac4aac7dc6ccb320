//! Config-driven reproductions of the two worked examples and a generic
//! strain sweep, with CSV output.
//!
//! Rows are computed in parallel per grid point and emitted in the fixed
//! order X, then α, then ℓ, then anisotropy ratio, then strain family.

mod config;
mod output;

use std::io::Write;

use rayon::prelude::*;
use thiserror::Error;

pub use config::{
    parse_config, parse_config_str, parse_config_with_clamp, ConfigError, ExperimentConfig, Grid, MotionId, Violation,
    DEFAULT_BETA, DEFAULT_BODY_HALF_WIDTH,
};
pub use output::{emit_csv, format_float, load_csv, read_csv, write_csv, CsvError, ResultRow, HEADER};

use crate::error::Error;
use crate::frac::{gamma_fn, varsigma, FracOrder, VarsigmaMode};
use crate::kinematics::{
    frac_f_material, ExponentialStretch, Identity, LinearStretch,
    split_by_ratio, BoundaryPolicy, FractionalKinematics, GradientOptions, Motion,
    NonlocalHorizon, OrderField, Point,
};
use crate::strains::{diagonal, strain_pair, strain_pair_from_gradient};
use crate::tensor::Vec3;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{command} needs the {expected} motion, the configuration selects {found}")]
    WrongMotion {
        command: &'static str,
        expected: &'static str,
        found: &'static str,
    },
    #[error(transparent)]
    Numerical(#[from] Error),
    #[error(transparent)]
    Output(#[from] CsvError),
}

impl ExperimentError {
    /// 2 for numerical failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Numerical(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

/// `𝓜 = ς/(2Γ(2−α)) · ℓ^{α−1}(ℓ_L^{1−α} + ℓ_R^{1−α})`, the fractional
/// derivative of a linear function over an anisotropic horizon.
pub fn closed_form_m(
    alpha: FracOrder,
    ell_left: f64,
    ell_right: f64,
    ell: f64,
    mode: &VarsigmaMode,
) -> Result<f64, Error> {
    let a = alpha.value();
    let s = varsigma(alpha, mode);
    let g = gamma_fn(2.0 - a)?;
    Ok(s / (2.0 * g) * ell.powf(a - 1.0) * (ell_left.powf(1.0 - a) + ell_right.powf(1.0 - a)))
}

pub fn build_motion(id: MotionId) -> Result<Box<dyn Motion>, Error> {
    Ok(match id {
        MotionId::Identity => Box::new(Identity),
        MotionId::Linear { beta } => Box::new(LinearStretch::new(beta)?),
        MotionId::Exponential => Box::new(ExponentialStretch),
    })
}

/// Kinematic settings for one `(α, ℓ, r)` combination of a sweep.
pub fn sweep_kinematics(
    config: &ExperimentConfig,
    alpha: FracOrder,
    ell: f64,
    ratio: f64,
) -> Result<FractionalKinematics, Error> {
    let horizon = NonlocalHorizon::from_ratio(ell, ratio)?;
    let boundary = if config.clamp_boundary {
        BoundaryPolicy::Clamp
    } else {
        BoundaryPolicy::Error
    };
    let side = |domain| GradientOptions {
        m: config.m,
        domain,
        boundary,
        ..Default::default()
    };
    let orders = OrderField::uniform(alpha);
    Ok(FractionalKinematics {
        material_orders: orders,
        material_horizon: horizon,
        material_options: side(config.body),
        spatial_orders: orders,
        spatial_horizon: horizon,
        spatial_options: side(config.spatial_body()),
    })
}

fn require_motion(
    config: &ExperimentConfig,
    command: &'static str,
    expected: &'static str,
) -> Result<(), ExperimentError> {
    if config.motion.name() == expected {
        Ok(())
    } else {
        Err(ExperimentError::WrongMotion {
            command,
            expected,
            found: config.motion.name(),
        })
    }
}

fn rows_at(
    config: &ExperimentConfig,
    motion: &dyn Motion,
    alphas: &[FracOrder],
    x: f64,
) -> Result<Vec<ResultRow>, Error> {
    let point = Point::Material(Vec3::new(x, 0.0, 0.0));
    let mut rows = Vec::new();
    for &alpha in alphas {
        for &ell in &config.ell_values {
            for &ratio in &config.anisotropy_ratios {
                let kin = sweep_kinematics(config, alpha, ell, ratio)?;
                let (ell_left, ell_right) = split_by_ratio(ell, ratio);
                for &family in &config.families {
                    let pair = strain_pair(family, motion, point, 0.0, &kin)?;
                    let row = ResultRow {
                        x,
                        alpha: alpha.value(),
                        ell,
                        ell_left,
                        ell_right,
                        family,
                        material: diagonal(&pair.material).into(),
                        spatial: diagonal(&pair.spatial).into(),
                    };
                    if !row.is_finite() {
                        return Err(Error::NonFinite("strain row"));
                    }
                    rows.push(row);
                }
            }
        }
    }
    Ok(rows)
}

fn sweep_with(config: &ExperimentConfig, alphas: &[FracOrder]) -> Result<Vec<ResultRow>, Error> {
    let motion = build_motion(config.motion)?;
    let per_point: Vec<Vec<ResultRow>> = config
        .x_grid
        .points()
        .par_iter()
        .map(|&x| rows_at(config, motion.as_ref(), alphas, x))
        .collect::<Result<_, _>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

/// One row per `(X, α, ℓ, r, family)` for whatever motion is configured.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<ResultRow>, ExperimentError> {
    Ok(sweep_with(config, &config.alpha_values)?)
}

/// Strain curves of the exponential stretch. The classical order α = 1 is
/// always included as a reference and sorted after the fractional orders.
pub fn run_example2(config: &ExperimentConfig) -> Result<Vec<ResultRow>, ExperimentError> {
    require_motion(config, "example2", "exponential")?;
    Ok(sweep_with(config, &with_classical(&config.alpha_values))?)
}

fn with_classical(alphas: &[FracOrder]) -> Vec<FracOrder> {
    let mut out = alphas.to_vec();
    if !out.iter().any(|a| a.is_classical()) {
        out.push(FracOrder::CLASSICAL);
    }
    out
}

/// Numeric against closed-form fractional gradient of the linear stretch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Example1Row {
    pub x: f64,
    pub alpha: f64,
    pub ell: f64,
    pub ell_left: f64,
    pub ell_right: f64,
    /// Closed-form `𝓜`.
    pub m_closed: f64,
    /// Diagonal of the numeric `F̃_X`.
    pub f_numeric: [f64; 3],
    /// `𝓜 · diag(1 + β, 1, 1)`.
    pub f_closed: [f64; 3],
    /// Largest entry of `|F̃_X − 𝓜 F|`, off-diagonals included.
    pub discrepancy: f64,
    /// Diagonal of `Ẽ_X`.
    pub material: [f64; 3],
    /// Diagonal of `ẽ_X`.
    pub spatial: [f64; 3],
}

pub const EXAMPLE1_HEADER: [&str; 19] = [
    "X", "alpha", "ell", "ell_L", "ell_R", "M", "F11", "F22", "F33", "F11_closed", "F22_closed",
    "F33_closed", "discrepancy", "E11", "E22", "E33", "e11", "e22", "e33",
];

pub fn run_example1(config: &ExperimentConfig) -> Result<Vec<Example1Row>, ExperimentError> {
    require_motion(config, "example1", "linear")?;
    let MotionId::Linear { beta } = config.motion else {
        unreachable!("checked above")
    };
    let motion = LinearStretch::new(beta)?;
    let classical = motion.gradient();
    let alphas = with_classical(&config.alpha_values);

    let per_point: Vec<Vec<Example1Row>> = config
        .x_grid
        .points()
        .par_iter()
        .map(|&x| -> Result<Vec<Example1Row>, Error> {
            let reference = Vec3::new(x, 0.0, 0.0);
            let mut rows = Vec::new();
            for &alpha in &alphas {
                for &ell in &config.ell_values {
                    for &ratio in &config.anisotropy_ratios {
                        let kin = sweep_kinematics(config, alpha, ell, ratio)?;
                        let (ell_left, ell_right) = split_by_ratio(ell, ratio);
                        let fx = frac_f_material(
                            &motion,
                            &reference,
                            0.0,
                            &kin.material_orders,
                            &kin.material_horizon,
                            &kin.material_options,
                        )?;
                        let m_closed = closed_form_m(
                            alpha,
                            ell_left,
                            ell_right,
                            ell,
                            &kin.material_options.varsigma,
                        )?;
                        let expected = classical.scale(m_closed);
                        let discrepancy = (fx.entries() - expected.entries()).amax();
                        let pair = strain_pair_from_gradient(&fx)?;
                        rows.push(Example1Row {
                            x,
                            alpha: alpha.value(),
                            ell,
                            ell_left,
                            ell_right,
                            m_closed,
                            f_numeric: diagonal(&fx).into(),
                            f_closed: diagonal(&expected).into(),
                            discrepancy,
                            material: diagonal(&pair.material).into(),
                            spatial: diagonal(&pair.spatial).into(),
                        });
                    }
                }
            }
            Ok(rows)
        })
        .collect::<Result<_, _>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

/// Example 1 table; same number formatting as [`write_csv`].
pub fn write_example1_csv<W: Write>(rows: &[Example1Row], writer: W) -> Result<(), CsvError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(writer);
    w.write_record(EXAMPLE1_HEADER)?;
    for r in rows {
        let mut values = vec![r.x, r.alpha, r.ell, r.ell_left, r.ell_right, r.m_closed];
        values.extend(r.f_numeric);
        values.extend(r.f_closed);
        values.push(r.discrepancy);
        values.extend(r.material);
        values.extend(r.spatial);
        w.write_record(values.iter().map(|&v| format_float(v)))?;
    }
    w.flush()?;
    Ok(())
}
