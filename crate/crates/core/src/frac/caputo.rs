use std::fmt;
use std::sync::Arc;

use super::gamma::gamma_positive;
use crate::error::{Error, Result};

/// Subdivisions per side used when a caller does not pick one.
pub const DEFAULT_SUBDIVISIONS: usize = 100;

/// Fractional order α ∈ (0, 1]. `α = 1` selects the classical derivative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub const CLASSICAL: FracOrder = FracOrder(1.0);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
            Ok(FracOrder(alpha))
        } else {
            Err(Error::InvalidOrder(alpha))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }
}

impl TryFrom<f64> for FracOrder {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        FracOrder::new(alpha)
    }
}

impl fmt::Display for FracOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Terminals `a < b` and evaluation point `t ∈ (a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    t: f64,
    b: f64,
}

impl Interval {
    /// Interval for a two-sided evaluation; requires `a < t < b`.
    pub fn new(a: f64, t: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && t.is_finite() && b.is_finite()) {
            return Err(Error::InvalidInterval(format!(
                "non-finite terminals ({a}, {t}, {b})"
            )));
        }
        if !(a < t && t < b) {
            return Err(Error::InvalidInterval(format!(
                "need a < t < b, got a = {a}, t = {t}, b = {b}"
            )));
        }
        Ok(Interval { a, t, b })
    }

    /// Interval `(t − left, t + right)` around `t`.
    pub fn around(t: f64, left: f64, right: f64) -> Result<Self> {
        Interval::new(t - left, t, t + right)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Choice of the scalar weight ς(α) in front of the Riesz-Caputo sum.
#[derive(Clone, Default)]
pub enum VarsigmaMode {
    /// ς(α) = Γ(2 − α), which makes affine maps with symmetric terminals
    /// reproduce their classical slope.
    #[default]
    GammaTwoMinusAlpha,
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl VarsigmaMode {
    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        VarsigmaMode::Custom(Arc::new(f))
    }
}

impl fmt::Debug for VarsigmaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarsigmaMode::GammaTwoMinusAlpha => f.write_str("GammaTwoMinusAlpha"),
            VarsigmaMode::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// ς(α) for the given mode.
pub fn varsigma(alpha: FracOrder, mode: &VarsigmaMode) -> f64 {
    match mode {
        VarsigmaMode::GammaTwoMinusAlpha => gamma_positive(2.0 - alpha.value()),
        VarsigmaMode::Custom(f) => f(alpha.value()),
    }
}

/// Everything a single Riesz-Caputo evaluation needs.
#[derive(Debug, Clone)]
pub struct DerivativeSpec {
    pub order: FracOrder,
    pub interval: Interval,
    pub m_left: usize,
    pub m_right: usize,
    pub varsigma: VarsigmaMode,
}

impl DerivativeSpec {
    pub fn new(order: FracOrder, interval: Interval) -> Self {
        DerivativeSpec {
            order,
            interval,
            m_left: DEFAULT_SUBDIVISIONS,
            m_right: DEFAULT_SUBDIVISIONS,
            varsigma: VarsigmaMode::default(),
        }
    }

    pub fn with_subdivisions(mut self, m: usize) -> Self {
        self.m_left = m;
        self.m_right = m;
        self
    }

    pub fn with_varsigma(mut self, mode: VarsigmaMode) -> Self {
        self.varsigma = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_subdivisions(self.m_left)?;
        check_subdivisions(self.m_right)
    }
}

type RealFn<'a> = Box<dyn Fn(f64) -> f64 + 'a>;

/// A scalar function of one variable, optionally with its first derivative.
///
/// Without an analytic derivative a central difference with step
/// `max(1e-6, 1e-8·|t|)` is used, which limits quadrature accuracy to
/// roughly 1e-6 relative.
pub struct Fn1D<'a> {
    value: RealFn<'a>,
    derivative: Option<RealFn<'a>>,
}

impl<'a> Fn1D<'a> {
    pub fn new(value: impl Fn(f64) -> f64 + 'a) -> Self {
        Fn1D {
            value: Box::new(value),
            derivative: None,
        }
    }

    pub fn with_derivative(
        value: impl Fn(f64) -> f64 + 'a,
        derivative: impl Fn(f64) -> f64 + 'a,
    ) -> Self {
        Fn1D {
            value: Box::new(value),
            derivative: Some(Box::new(derivative)),
        }
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn value(&self, t: f64) -> f64 {
        (self.value)(t)
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match &self.derivative {
            Some(d) => d(t),
            None => {
                let h = (1e-8 * t.abs()).max(1e-6);
                ((self.value)(t + h) - (self.value)(t - h)) / (2.0 * h)
            }
        }
    }
}

impl fmt::Debug for Fn1D<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fn1D")
            .field("analytic_derivative", &self.derivative.is_some())
            .finish()
    }
}

fn check_subdivisions(m: usize) -> Result<()> {
    if m < 2 {
        Err(Error::InvalidSubdivision(m))
    } else {
        Ok(())
    }
}

/// Product-trapezoidal weight of the node `k` steps away from the evaluation
/// point (k = 0 is the point itself, k = m the far terminal), for n = 1.
fn trapezoid_weight(k: usize, m: usize, alpha: f64) -> f64 {
    let p = 2.0 - alpha;
    let kf = k as f64;
    if k == 0 {
        1.0
    } else if k == m {
        let mf = m as f64;
        (mf - 1.0).powf(p) - (mf - 2.0 + alpha) * mf.powf(1.0 - alpha)
    } else {
        (kf + 1.0).powf(p) - 2.0 * kf.powf(p) + (kf - 1.0).powf(p)
    }
}

/// Weighted sum over nodes `t + sign·k·h`, k = 0..=m.
fn one_sided_sum(f: &Fn1D<'_>, t: f64, width: f64, sign: f64, alpha: f64, m: usize) -> f64 {
    let h = width / m as f64;
    let mut acc = 0.0;
    for k in 0..=m {
        let df = f.derivative(t + sign * k as f64 * h);
        if df != 0.0 {
            acc += trapezoid_weight(k, m, alpha) * df;
        }
    }
    h.powf(1.0 - alpha) / gamma_positive(3.0 - alpha) * acc
}

/// Left-sided Caputo derivative over `(a, t)`.
pub fn left_caputo(f: &Fn1D<'_>, a: f64, t: f64, alpha: FracOrder, m: usize) -> Result<f64> {
    if !(a < t) || !a.is_finite() || !t.is_finite() {
        return Err(Error::InvalidInterval(format!(
            "left-sided derivative needs a < t, got a = {a}, t = {t}"
        )));
    }
    check_subdivisions(m)?;
    let value = if alpha.is_classical() {
        f.derivative(t)
    } else {
        one_sided_sum(f, t, t - a, -1.0, alpha.value(), m)
    };
    finite(value, "left Caputo derivative")
}

fn finite(value: f64, what: &'static str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Right-sided Caputo derivative over `(t, b)`, including its `(−1)` factor.
///
/// At α = 1 this returns `−f'(t)`, the limit of the fractional operator.
pub fn right_caputo(f: &Fn1D<'_>, t: f64, b: f64, alpha: FracOrder, m: usize) -> Result<f64> {
    if !(t < b) || !t.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInterval(format!(
            "right-sided derivative needs t < b, got t = {t}, b = {b}"
        )));
    }
    check_subdivisions(m)?;
    let value = if alpha.is_classical() {
        -f.derivative(t)
    } else {
        -one_sided_sum(f, t, b - t, 1.0, alpha.value(), m)
    };
    finite(value, "right Caputo derivative")
}

/// Riesz-Caputo derivative `ς(α)/2 · (left − right)`; exactly `f'(t)` at α = 1.
pub fn riesz_caputo(f: &Fn1D<'_>, spec: &DerivativeSpec) -> Result<f64> {
    spec.validate()?;
    let iv = spec.interval;
    if spec.order.is_classical() {
        return finite(f.derivative(iv.t), "Riesz-Caputo derivative");
    }
    let left = left_caputo(f, iv.a, iv.t, spec.order, spec.m_left)?;
    let right = right_caputo(f, iv.t, iv.b, spec.order, spec.m_right)?;
    finite(
        0.5 * varsigma(spec.order, &spec.varsigma) * (left - right),
        "Riesz-Caputo derivative",
    )
}
