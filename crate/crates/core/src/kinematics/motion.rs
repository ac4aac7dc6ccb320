//! Regular motions `x = φ(X, t)` with their inverses.

use crate::error::{Error, Result};
use crate::tensor::{Mat3, Tensor2, Vec3, TWO_POINT};

/// A regular motion and its inverse.
///
/// Implementations must be callable from several threads at once. Analytic
/// Jacobians are optional; without them derivatives fall back to central
/// differences.
pub trait Motion: Send + Sync {
    /// `x = φ(X, t)`.
    fn forward(&self, reference: &Vec3, t: f64) -> Vec3;

    /// `X = φ⁻¹(x, t)`.
    fn inverse(&self, current: &Vec3, t: f64) -> Vec3;

    /// `∂φ_a/∂X_A` at `X`, when known in closed form.
    fn forward_jacobian(&self, _reference: &Vec3, _t: f64) -> Option<Mat3> {
        None
    }

    /// `∂φ⁻¹_A/∂x_a` at `x`, when known in closed form.
    fn inverse_jacobian(&self, _current: &Vec3, _t: f64) -> Option<Mat3> {
        None
    }
}

/// Step used for finite-difference derivatives at coordinate value `s`.
pub(crate) fn fd_step(s: f64) -> f64 {
    (1e-8 * s.abs()).max(1e-6)
}

fn central_jacobian(map: impl Fn(&Vec3) -> Vec3, at: &Vec3) -> Mat3 {
    let mut jac = Mat3::zeros();
    for axis in 0..3 {
        let h = fd_step(at[axis]);
        let mut plus = *at;
        let mut minus = *at;
        plus[axis] += h;
        minus[axis] -= h;
        let column = (map(&plus) - map(&minus)) / (2.0 * h);
        jac.set_column(axis, &column);
    }
    jac
}

/// Largest `|φ⁻¹(φ(X)) − X|` over the probe points.
pub fn roundtrip_error(motion: &dyn Motion, probes: &[Vec3], t: f64) -> f64 {
    probes
        .iter()
        .map(|p| (motion.inverse(&motion.forward(p, t), t) - p).amax())
        .fold(0.0, f64::max)
}

/// Fails when `φ⁻¹ ∘ φ` departs from the identity by more than `tol` on any
/// probe point.
pub fn check_regular(motion: &dyn Motion, probes: &[Vec3], t: f64, tol: f64) -> Result<()> {
    let err = roundtrip_error(motion, probes, t);
    if err.is_finite() && err <= tol {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "motion inverse does not invert the forward map (error {err:e})"
        )))
    }
}

/// Forward Jacobian, analytic when the motion provides one.
pub(crate) fn forward_jacobian_or_fd(motion: &dyn Motion, reference: &Vec3, t: f64) -> Mat3 {
    motion
        .forward_jacobian(reference, t)
        .unwrap_or_else(|| central_jacobian(|p| motion.forward(p, t), reference))
}

pub(crate) fn inverse_jacobian_or_fd(motion: &dyn Motion, current: &Vec3, t: f64) -> Mat3 {
    motion
        .inverse_jacobian(current, t)
        .unwrap_or_else(|| central_jacobian(|p| motion.inverse(p, t), current))
}

/// `x = X`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Identity;

impl Motion for Identity {
    fn forward(&self, reference: &Vec3, _t: f64) -> Vec3 {
        *reference
    }

    fn inverse(&self, current: &Vec3, _t: f64) -> Vec3 {
        *current
    }

    fn forward_jacobian(&self, _: &Vec3, _: f64) -> Option<Mat3> {
        Some(Mat3::identity())
    }

    fn inverse_jacobian(&self, _: &Vec3, _: f64) -> Option<Mat3> {
        Some(Mat3::identity())
    }
}

/// Rigid translation `x = X + c`.
#[derive(Debug, Clone, Copy)]
pub struct Translation {
    pub offset: Vec3,
}

impl Motion for Translation {
    fn forward(&self, reference: &Vec3, _t: f64) -> Vec3 {
        reference + self.offset
    }

    fn inverse(&self, current: &Vec3, _t: f64) -> Vec3 {
        current - self.offset
    }

    fn forward_jacobian(&self, _: &Vec3, _: f64) -> Option<Mat3> {
        Some(Mat3::identity())
    }

    fn inverse_jacobian(&self, _: &Vec3, _: f64) -> Option<Mat3> {
        Some(Mat3::identity())
    }
}

/// Uniaxial stretch `x = (1 + β)X₁ e₁ + X₂ e₂ + X₃ e₃`.
#[derive(Debug, Clone, Copy)]
pub struct LinearStretch {
    beta: f64,
}

impl LinearStretch {
    pub fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta <= -1.0 {
            return Err(Error::Domain(format!(
                "stretch requires 1 + beta > 0, got beta = {beta}"
            )));
        }
        Ok(LinearStretch { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gradient(&self) -> Tensor2 {
        Tensor2::diagonal([1.0 + self.beta, 1.0, 1.0], TWO_POINT)
    }
}

impl Motion for LinearStretch {
    fn forward(&self, r: &Vec3, _t: f64) -> Vec3 {
        Vec3::new((1.0 + self.beta) * r[0], r[1], r[2])
    }

    fn inverse(&self, c: &Vec3, _t: f64) -> Vec3 {
        Vec3::new(c[0] / (1.0 + self.beta), c[1], c[2])
    }

    fn forward_jacobian(&self, _: &Vec3, _: f64) -> Option<Mat3> {
        Some(Mat3::from_diagonal(&Vec3::new(1.0 + self.beta, 1.0, 1.0)))
    }

    fn inverse_jacobian(&self, _: &Vec3, _: f64) -> Option<Mat3> {
        Some(Mat3::from_diagonal(&Vec3::new(1.0 / (1.0 + self.beta), 1.0, 1.0)))
    }
}

/// `x = e^{X₁} e₁ + X₂ e₂ + X₃ e₃`; the inverse needs `x₁ > 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExponentialStretch;

impl Motion for ExponentialStretch {
    fn forward(&self, r: &Vec3, _t: f64) -> Vec3 {
        Vec3::new(r[0].exp(), r[1], r[2])
    }

    fn inverse(&self, c: &Vec3, _t: f64) -> Vec3 {
        Vec3::new(c[0].ln(), c[1], c[2])
    }

    fn forward_jacobian(&self, r: &Vec3, _: f64) -> Option<Mat3> {
        Some(Mat3::from_diagonal(&Vec3::new(r[0].exp(), 1.0, 1.0)))
    }

    fn inverse_jacobian(&self, c: &Vec3, _: f64) -> Option<Mat3> {
        Some(Mat3::from_diagonal(&Vec3::new(1.0 / c[0], 1.0, 1.0)))
    }
}

/// Homogeneous deformation `x = A X + c` with `det A > 0`.
#[derive(Debug, Clone, Copy)]
pub struct Affine {
    matrix: Mat3,
    inverse: Mat3,
    offset: Vec3,
}

impl Affine {
    pub fn new(matrix: Mat3, offset: Vec3) -> Result<Self> {
        let inverse = Tensor2::new(matrix, TWO_POINT).inverse()?;
        let det = matrix.determinant();
        if det <= 0.0 {
            return Err(Error::NonPositiveJacobian(det));
        }
        Ok(Affine {
            matrix,
            inverse: *inverse.entries(),
            offset,
        })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }
}

impl Motion for Affine {
    fn forward(&self, r: &Vec3, _t: f64) -> Vec3 {
        self.matrix * r + self.offset
    }

    fn inverse(&self, c: &Vec3, _t: f64) -> Vec3 {
        self.inverse * (c - self.offset)
    }

    fn forward_jacobian(&self, _: &Vec3, _: f64) -> Option<Mat3> {
        Some(self.matrix)
    }

    fn inverse_jacobian(&self, _: &Vec3, _: f64) -> Option<Mat3> {
        Some(self.inverse)
    }
}

/// Motion given by a pair of closures, without analytic Jacobians.
pub struct ClosureMotion<F, G> {
    forward: F,
    inverse: G,
}

impl<F, G> ClosureMotion<F, G>
where
    F: Fn(&Vec3, f64) -> Vec3 + Send + Sync,
    G: Fn(&Vec3, f64) -> Vec3 + Send + Sync,
{
    pub fn new(forward: F, inverse: G) -> Self {
        ClosureMotion { forward, inverse }
    }
}

impl<F, G> Motion for ClosureMotion<F, G>
where
    F: Fn(&Vec3, f64) -> Vec3 + Send + Sync,
    G: Fn(&Vec3, f64) -> Vec3 + Send + Sync,
{
    fn forward(&self, r: &Vec3, t: f64) -> Vec3 {
        (self.forward)(r, t)
    }

    fn inverse(&self, c: &Vec3, t: f64) -> Vec3 {
        (self.inverse)(c, t)
    }
}
