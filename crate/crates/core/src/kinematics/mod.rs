//! Classical and fractional deformation gradients.
//!
//! Entry `(a, A)` of the fractional material gradient is the Riesz-Caputo
//! derivative of `φ_a` along `X_A` over `(X_A − ℓ_L,aA, X_A + ℓ_R,aA)`,
//! scaled by `ℓ_aA^(α_aA − 1)` so that it is dimensionless. The two other
//! coordinates are held fixed while differentiating. The spatial gradient is
//! built the same way from `φ⁻¹` along `x_a`.
//!
//! From these, three composites relate the line elements:
//!
//! | kind                  | product           | legs              |
//! |-----------------------|-------------------|-------------------|
//! | `AlphaComposite`      | `F̃_X F⁻¹ F̃_x⁻¹`   | spatial, material |
//! | `AlphaSpatialSide`    | `F̃_x F`           | material only     |
//! | `AlphaMaterialSide`   | `F̃_X F⁻¹`         | spatial only      |

mod motion;

use log::warn;

pub use motion::{
    check_regular, roundtrip_error, Affine, ClosureMotion, ExponentialStretch, Identity,
    LinearStretch, Motion, Translation,
};

use crate::error::{Error, Result};
use crate::frac::{
    riesz_caputo, DerivativeSpec, Fn1D, FracOrder, Interval, VarsigmaMode, DEFAULT_SUBDIVISIONS,
};
use crate::tensor::{
    Config, Legs, Mat3, Tensor2, Vec3, MATERIAL, SPATIAL, TWO_POINT, TWO_POINT_INVERSE,
};

/// Fractional orders `α_aA`, one per gradient entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderField {
    alpha: [[FracOrder; 3]; 3],
}

impl OrderField {
    pub fn uniform(alpha: FracOrder) -> Self {
        OrderField {
            alpha: [[alpha; 3]; 3],
        }
    }

    pub fn classical() -> Self {
        OrderField::uniform(FracOrder::CLASSICAL)
    }

    pub fn from_rows(rows: [[f64; 3]; 3]) -> Result<Self> {
        let mut alpha = [[FracOrder::CLASSICAL; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                alpha[i][j] = FracOrder::new(rows[i][j])?;
            }
        }
        Ok(OrderField { alpha })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FracOrder {
        self.alpha[i][j]
    }

    pub fn is_classical(&self) -> bool {
        self.alpha.iter().flatten().all(|a| a.is_classical())
    }
}

/// Per-entry horizon: left and right reach `ℓ_L`, `ℓ_R` and the scaling
/// length `ℓ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlocalHorizon {
    ell_left: [[f64; 3]; 3],
    ell_right: [[f64; 3]; 3],
    ell: [[f64; 3]; 3],
}

fn check_lengths(name: &str, rows: &[[f64; 3]; 3]) -> Result<()> {
    for v in rows.iter().flatten() {
        if !(v.is_finite() && *v > 0.0) {
            return Err(Error::Domain(format!("{name} entries must be positive, got {v}")));
        }
    }
    Ok(())
}

impl NonlocalHorizon {
    /// Scaling length defaults to `(ℓ_L + ℓ_R)/2` entrywise.
    pub fn new(ell_left: [[f64; 3]; 3], ell_right: [[f64; 3]; 3]) -> Result<Self> {
        let mut ell = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                ell[i][j] = 0.5 * (ell_left[i][j] + ell_right[i][j]);
            }
        }
        NonlocalHorizon::with_scale(ell_left, ell_right, ell)
    }

    pub fn with_scale(
        ell_left: [[f64; 3]; 3],
        ell_right: [[f64; 3]; 3],
        ell: [[f64; 3]; 3],
    ) -> Result<Self> {
        check_lengths("ell_L", &ell_left)?;
        check_lengths("ell_R", &ell_right)?;
        check_lengths("ell", &ell)?;
        Ok(NonlocalHorizon {
            ell_left,
            ell_right,
            ell,
        })
    }

    /// Same `(ℓ_L, ℓ_R)` on every entry.
    pub fn uniform(ell_left: f64, ell_right: f64) -> Result<Self> {
        NonlocalHorizon::new([[ell_left; 3]; 3], [[ell_right; 3]; 3])
    }

    pub fn symmetric(ell: f64) -> Result<Self> {
        NonlocalHorizon::uniform(ell, ell)
    }

    /// Uniform horizon with anisotropy ratio `r = ℓ_L/ℓ_R` at fixed
    /// `ℓ = (ℓ_L + ℓ_R)/2`.
    pub fn from_ratio(ell: f64, ratio: f64) -> Result<Self> {
        if !(ratio.is_finite() && ratio > 0.0) {
            return Err(Error::Domain(format!("anisotropy ratio must be positive, got {ratio}")));
        }
        let (left, right) = split_by_ratio(ell, ratio);
        NonlocalHorizon::uniform(left, right)
    }

    /// Overrides the scaling length on every entry.
    pub fn set_scale(mut self, ell: f64) -> Result<Self> {
        self.ell = [[ell; 3]; 3];
        check_lengths("ell", &self.ell)?;
        Ok(self)
    }

    pub fn left(&self, i: usize, j: usize) -> f64 {
        self.ell_left[i][j]
    }

    pub fn right(&self, i: usize, j: usize) -> f64 {
        self.ell_right[i][j]
    }

    pub fn scale(&self, i: usize, j: usize) -> f64 {
        self.ell[i][j]
    }
}

/// `(ℓ_L, ℓ_R)` with `ℓ_L/ℓ_R = ratio` and mean `ell`.
pub fn split_by_ratio(ell: f64, ratio: f64) -> (f64, f64) {
    let right = 2.0 * ell / (1.0 + ratio);
    (ratio * right, right)
}

/// Axis-aligned box containing the body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyBox {
    pub min: [f64; 3],
    pub max: [f64; 3],
}

impl BodyBox {
    pub fn new(min: [f64; 3], max: [f64; 3]) -> Result<Self> {
        for axis in 0..3 {
            if !(min[axis] < max[axis]) {
                return Err(Error::Domain(format!(
                    "body box axis {axis}: min {} must be below max {}",
                    min[axis], max[axis]
                )));
            }
        }
        Ok(BodyBox { min, max })
    }

    pub fn unbounded() -> Self {
        BodyBox {
            min: [f64::NEG_INFINITY; 3],
            max: [f64::INFINITY; 3],
        }
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        (0..3).all(|i| self.min[i] <= p[i] && p[i] <= self.max[i])
    }
}

impl Default for BodyBox {
    fn default() -> Self {
        BodyBox::unbounded()
    }
}

/// What to do when a horizon interval leaves the body box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryPolicy {
    #[default]
    Error,
    /// Truncate the terminals to the box and log a warning.
    Clamp,
}

/// Numerical settings shared by all entries of one fractional gradient.
#[derive(Debug, Clone)]
pub struct GradientOptions {
    /// Subdivisions per side of each Riesz-Caputo quadrature.
    pub m: usize,
    pub varsigma: VarsigmaMode,
    pub domain: BodyBox,
    pub boundary: BoundaryPolicy,
}

impl Default for GradientOptions {
    fn default() -> Self {
        GradientOptions {
            m: DEFAULT_SUBDIVISIONS,
            varsigma: VarsigmaMode::default(),
            domain: BodyBox::unbounded(),
            boundary: BoundaryPolicy::Error,
        }
    }
}

impl GradientOptions {
    pub fn with_m(m: usize) -> Self {
        GradientOptions {
            m,
            ..Default::default()
        }
    }
}

/// Which arrow of the line-element diagram to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GradientKind {
    /// `F`, maps `dX` to `dx`.
    Classical,
    /// `F̃_X`, maps `dX` to `dx̃`.
    FracMaterial,
    /// `F̃_x`, maps `dx` to `dX̃`.
    FracSpatial,
    /// `F^α = F̃_X F⁻¹ F̃_x⁻¹`, maps `dX̃` to `dx̃`.
    AlphaComposite,
    /// `F^α_X = F̃_X F⁻¹`, maps `dx` to `dx̃`.
    AlphaMaterialSide,
    /// `F^α_x = F̃_x F`, maps `dX` to `dX̃`.
    AlphaSpatialSide,
}

impl GradientKind {
    pub const ALL: [GradientKind; 6] = [
        GradientKind::Classical,
        GradientKind::FracMaterial,
        GradientKind::FracSpatial,
        GradientKind::AlphaComposite,
        GradientKind::AlphaMaterialSide,
        GradientKind::AlphaSpatialSide,
    ];

    /// `(output, input)` configurations of the tensor.
    pub fn legs(self) -> Legs {
        match self {
            GradientKind::Classical | GradientKind::FracMaterial | GradientKind::AlphaComposite => {
                TWO_POINT
            }
            GradientKind::FracSpatial => TWO_POINT_INVERSE,
            GradientKind::AlphaMaterialSide => SPATIAL,
            GradientKind::AlphaSpatialSide => MATERIAL,
        }
    }
}

/// Orders, horizons and options for both the material and the spatial side.
#[derive(Debug, Clone)]
pub struct FractionalKinematics {
    pub material_orders: OrderField,
    pub material_horizon: NonlocalHorizon,
    pub material_options: GradientOptions,
    pub spatial_orders: OrderField,
    pub spatial_horizon: NonlocalHorizon,
    pub spatial_options: GradientOptions,
}

impl FractionalKinematics {
    /// Same orders, horizon and options on both sides.
    pub fn uniform(orders: OrderField, horizon: NonlocalHorizon, options: GradientOptions) -> Self {
        FractionalKinematics {
            material_orders: orders,
            material_horizon: horizon,
            material_options: options.clone(),
            spatial_orders: orders,
            spatial_horizon: horizon,
            spatial_options: options,
        }
    }
}

/// A point given either in the reference or in the current configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Material(Vec3),
    Spatial(Vec3),
}

impl Point {
    /// `(X, x)` for this point under `motion`.
    pub fn resolve(&self, motion: &dyn Motion, t: f64) -> (Vec3, Vec3) {
        match *self {
            Point::Material(r) => (r, motion.forward(&r, t)),
            Point::Spatial(c) => (motion.inverse(&c, t), c),
        }
    }
}

/// Classical `F = ∂φ/∂X`.
pub fn classical_f(motion: &dyn Motion, reference: &Vec3, t: f64) -> Result<Tensor2> {
    let jac = motion::forward_jacobian_or_fd(motion, reference, t);
    finite(Tensor2::new(jac, TWO_POINT), "classical gradient")
}

/// Classical `F⁻¹ = ∂φ⁻¹/∂x` evaluated at the current point.
pub fn classical_f_inverse(motion: &dyn Motion, current: &Vec3, t: f64) -> Result<Tensor2> {
    let jac = motion::inverse_jacobian_or_fd(motion, current, t);
    finite(Tensor2::new(jac, TWO_POINT_INVERSE), "classical inverse gradient")
}

fn finite(t: Tensor2, what: &'static str) -> Result<Tensor2> {
    if t.is_finite() {
        Ok(t)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Horizon interval on `axis` around `center`, after applying the boundary
/// policy.
fn horizon_interval(
    center: f64,
    axis: usize,
    left: f64,
    right: f64,
    options: &GradientOptions,
) -> Result<Interval> {
    let (mut lo, mut hi) = (center - left, center + right);
    let (min, max) = (options.domain.min[axis], options.domain.max[axis]);
    if lo < min || hi > max {
        match options.boundary {
            BoundaryPolicy::Error => {
                return Err(Error::OutsideBody {
                    axis,
                    lo,
                    hi,
                    min,
                    max,
                })
            }
            BoundaryPolicy::Clamp => {
                warn!(
                    "horizon ({lo}, {hi}) on axis {axis} truncated to body [{min}, {max}]"
                );
                lo = lo.max(min);
                hi = hi.min(max);
            }
        }
    }
    Interval::new(lo, center, hi)
}

/// Shared assembly of `ℓ^(α−1) · D^α` over the nine entries of a map.
struct DirectionalGradient<'a> {
    map: &'a (dyn Fn(&Vec3) -> Vec3 + Sync),
    jacobian: Option<&'a (dyn Fn(&Vec3) -> Mat3 + Sync)>,
    orders: &'a OrderField,
    horizon: &'a NonlocalHorizon,
    options: &'a GradientOptions,
}

impl DirectionalGradient<'_> {
    fn entry(&self, point: &Vec3, component: usize, axis: usize) -> Result<f64> {
        let alpha = self.orders.get(component, axis);
        let interval = horizon_interval(
            point[axis],
            axis,
            self.horizon.left(component, axis),
            self.horizon.right(component, axis),
            self.options,
        )?;
        let along = |s: f64| {
            let mut p = *point;
            p[axis] = s;
            p
        };
        let value = |s: f64| (self.map)(&along(s))[component];
        let f = match self.jacobian {
            Some(jac) => Fn1D::with_derivative(value, move |s| jac(&along(s))[(component, axis)]),
            None => Fn1D::new(value),
        };
        let spec = DerivativeSpec::new(alpha, interval)
            .with_subdivisions(self.options.m)
            .with_varsigma(self.options.varsigma.clone());
        let rc = riesz_caputo(&f, &spec)?;
        let scale = self.horizon.scale(component, axis).powf(alpha.value() - 1.0);
        Ok(scale * rc)
    }

    fn assemble(&self, point: &Vec3, legs: Legs, what: &'static str) -> Result<Tensor2> {
        let mut out = Mat3::zeros();
        for component in 0..3 {
            for axis in 0..3 {
                out[(component, axis)] = self.entry(point, component, axis)?;
            }
        }
        finite(Tensor2::new(out, legs), what)
    }
}

/// Fractional material gradient `F̃_X` at `X`.
pub fn frac_f_material(
    motion: &dyn Motion,
    reference: &Vec3,
    t: f64,
    orders: &OrderField,
    horizon: &NonlocalHorizon,
    options: &GradientOptions,
) -> Result<Tensor2> {
    let map = |p: &Vec3| motion.forward(p, t);
    let has_jacobian = motion.forward_jacobian(reference, t).is_some();
    let jac = |p: &Vec3| motion::forward_jacobian_or_fd(motion, p, t);
    DirectionalGradient {
        map: &map,
        jacobian: has_jacobian.then_some(&jac as &(dyn Fn(&Vec3) -> Mat3 + Sync)),
        orders,
        horizon,
        options,
    }
    .assemble(reference, TWO_POINT, "fractional material gradient")
}

/// Fractional spatial gradient `F̃_x` at `x`.
pub fn frac_f_spatial(
    motion: &dyn Motion,
    current: &Vec3,
    t: f64,
    orders: &OrderField,
    horizon: &NonlocalHorizon,
    options: &GradientOptions,
) -> Result<Tensor2> {
    let map = |p: &Vec3| motion.inverse(p, t);
    let has_jacobian = motion.inverse_jacobian(current, t).is_some();
    let jac = |p: &Vec3| motion::inverse_jacobian_or_fd(motion, p, t);
    DirectionalGradient {
        map: &map,
        jacobian: has_jacobian.then_some(&jac as &(dyn Fn(&Vec3) -> Mat3 + Sync)),
        orders,
        horizon,
        options,
    }
    .assemble(current, TWO_POINT_INVERSE, "fractional spatial gradient")
}

/// Any gradient of the line-element diagram at `point`.
pub fn composite_f(
    kind: GradientKind,
    motion: &dyn Motion,
    point: Point,
    t: f64,
    kin: &FractionalKinematics,
) -> Result<Tensor2> {
    let (reference, current) = point.resolve(motion, t);
    let frac_material = || {
        frac_f_material(
            motion,
            &reference,
            t,
            &kin.material_orders,
            &kin.material_horizon,
            &kin.material_options,
        )
    };
    let frac_spatial = || {
        frac_f_spatial(
            motion,
            &current,
            t,
            &kin.spatial_orders,
            &kin.spatial_horizon,
            &kin.spatial_options,
        )
    };
    match kind {
        GradientKind::Classical => classical_f(motion, &reference, t),
        GradientKind::FracMaterial => frac_material(),
        GradientKind::FracSpatial => frac_spatial(),
        GradientKind::AlphaComposite => {
            let f_inv = classical_f(motion, &reference, t)?.inverse()?;
            frac_material()?
                .dot(&f_inv)?
                .dot(&frac_spatial()?.inverse()?)
        }
        GradientKind::AlphaMaterialSide => {
            let f_inv = classical_f(motion, &reference, t)?.inverse()?;
            frac_material()?.dot(&f_inv)
        }
        GradientKind::AlphaSpatialSide => {
            frac_spatial()?.dot(&classical_f(motion, &reference, t)?)
        }
    }
}

/// `Grad Ũ_X = F̃_X − I`.
pub fn material_displacement_gradient(
    motion: &dyn Motion,
    reference: &Vec3,
    t: f64,
    orders: &OrderField,
    horizon: &NonlocalHorizon,
    options: &GradientOptions,
) -> Result<Tensor2> {
    let f = frac_f_material(motion, reference, t, orders, horizon, options)?;
    Ok(Tensor2::new(f.entries() - Mat3::identity(), f.legs()))
}

/// `grad ũ_x = i − F̃_x`.
pub fn spatial_displacement_gradient(
    motion: &dyn Motion,
    current: &Vec3,
    t: f64,
    orders: &OrderField,
    horizon: &NonlocalHorizon,
    options: &GradientOptions,
) -> Result<Tensor2> {
    let f = frac_f_spatial(motion, current, t, orders, horizon, options)?;
    Ok(Tensor2::new(Mat3::identity() - f.entries(), f.legs()))
}

/// One-dimensional small fractional strain of a displacement field `u`
/// at `x` over `(x − ℓ_L, x + ℓ_R)`, scaled by `ℓ^(α−1)`.
pub fn small_strain_1d(
    u: &Fn1D<'_>,
    x: f64,
    alpha: FracOrder,
    ell_left: f64,
    ell_right: f64,
    ell: f64,
    m: usize,
) -> Result<f64> {
    if !(ell_left > 0.0 && ell_right > 0.0 && ell > 0.0) {
        return Err(Error::Domain(format!(
            "lengths must be positive, got ell_L = {ell_left}, ell_R = {ell_right}, ell = {ell}"
        )));
    }
    let spec = DerivativeSpec::new(alpha, Interval::around(x, ell_left, ell_right)?)
        .with_subdivisions(m);
    let rc = riesz_caputo(u, &spec)?;
    Ok(ell.powf(alpha.value() - 1.0) * rc)
}

/// A line element together with the configuration it belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineElement {
    pub components: Vec3,
    pub config: Config,
}

impl LineElement {
    pub fn material(components: Vec3) -> Self {
        LineElement {
            components,
            config: Config::Material,
        }
    }

    pub fn spatial(components: Vec3) -> Self {
        LineElement {
            components,
            config: Config::Spatial,
        }
    }
}

/// Maps a line element through `gradient`, which must be of `kind`.
pub fn transport_line_element(
    kind: GradientKind,
    v: &LineElement,
    gradient: &Tensor2,
) -> Result<LineElement> {
    gradient.require_legs(kind.legs())?;
    let (out, input) = gradient.legs();
    if v.config != input {
        return Err(Error::LegMismatch {
            expected: input,
            found: v.config,
        });
    }
    Ok(LineElement {
        components: gradient.apply(&v.components),
        config: out,
    })
}

#[cfg(test)]
mod tests;
