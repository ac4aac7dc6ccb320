//! Stress measures attached to a choice of deformation gradient, mass
//! conservation and the static local balance of momentum.
//!
//! The fractional Cauchy stress coincides with the classical one; what
//! changes between formulations is the gradient fed to the Piola-Kirchhoff
//! conversions and to the Jacobian.

use crate::error::{Error, Result};
use crate::tensor::{Mat3, Tensor2, Vec3, SPATIAL, TWO_POINT, TWO_POINT_INVERSE};

const SYMMETRY_TOL: f64 = 1e-12;

/// Cauchy stress together with densities and body force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressState {
    pub sigma: Tensor2,
    pub rho0: f64,
    pub rho: f64,
    pub body_force: Vec3,
}

impl StressState {
    pub fn new(sigma: Tensor2, rho0: f64, rho: f64, body_force: Vec3) -> Result<Self> {
        check_cauchy(&sigma)?;
        if !(rho0 > 0.0 && rho > 0.0) {
            return Err(Error::Domain(format!(
                "densities must be positive, got rho0 = {rho0}, rho = {rho}"
            )));
        }
        Ok(StressState {
            sigma,
            rho0,
            rho,
            body_force,
        })
    }
}

fn check_cauchy(sigma: &Tensor2) -> Result<()> {
    sigma.require_legs(SPATIAL)?;
    let asym = sigma.asymmetry();
    if asym > SYMMETRY_TOL * sigma.max_abs().max(1.0) {
        return Err(Error::Domain(format!(
            "Cauchy stress must be symmetric (asymmetry {asym:e})"
        )));
    }
    Ok(())
}

/// Which Piola-Kirchhoff pair to form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PkFamily {
    /// From `F`.
    Classical,
    /// From `F̃_X`.
    FracMaterial,
    /// From `F̃_x`, which maps the spatial side back, so `F̃_x⁻¹` plays the
    /// role of `F` and `J̃_x⁻¹` that of `J`.
    FracSpatial,
    /// From `F^α`.
    Alpha,
}

impl PkFamily {
    pub const ALL: [PkFamily; 4] = [
        PkFamily::Classical,
        PkFamily::FracMaterial,
        PkFamily::FracSpatial,
        PkFamily::Alpha,
    ];

    /// Legs the gradient passed with this family must carry.
    pub fn gradient_legs(self) -> (crate::tensor::Config, crate::tensor::Config) {
        match self {
            PkFamily::FracSpatial => TWO_POINT_INVERSE,
            _ => TWO_POINT,
        }
    }
}

/// `J = det F◇`.
pub fn jacobian(fd: &Tensor2) -> f64 {
    fd.determinant()
}

/// Spatial density `ρ = ρ₀/J`.
pub fn mass_transform(rho0: f64, fd: &Tensor2) -> Result<f64> {
    if !(rho0 > 0.0) {
        return Err(Error::Domain(format!("reference density must be positive, got {rho0}")));
    }
    let j = jacobian(fd);
    if !(j > 0.0) {
        return Err(Error::NonPositiveJacobian(j));
    }
    Ok(rho0 / j)
}

/// `ñ = F^α_X n`. The result is not normalized.
pub fn normal_transform(n: &Vec3, f_alpha_material: &Tensor2) -> Result<Vec3> {
    f_alpha_material.require_legs(SPATIAL)?;
    Ok(f_alpha_material.apply(n))
}

/// `t̃ = F^α_X t`.
pub fn traction_transform(traction: &Vec3, f_alpha_material: &Tensor2) -> Result<Vec3> {
    f_alpha_material.require_legs(SPATIAL)?;
    Ok(f_alpha_material.apply(traction))
}

/// Fractional Cauchy stress, equal to the classical one.
pub fn fractional_cauchy(sigma: &Tensor2) -> Result<Tensor2> {
    check_cauchy(sigma)?;
    Ok(*sigma)
}

/// First and second Piola-Kirchhoff stresses `(P, S)`.
///
/// For `FracSpatial`, `fd` is `F̃_x` and the pair is
/// `P = J̃_x⁻¹ σ F̃_xᵀ`, `S = F̃_x P`.
pub fn piola_kirchhoff(family: PkFamily, sigma: &Tensor2, fd: &Tensor2) -> Result<(Tensor2, Tensor2)> {
    check_cauchy(sigma)?;
    fd.require_legs(family.gradient_legs())?;
    match family {
        PkFamily::FracSpatial => {
            let inv_j = 1.0 / jacobian(fd);
            // `fd.inverse()` only to reject singular gradients
            fd.inverse()?;
            let p = sigma.dot(&fd.transpose())?.scale(inv_j);
            let s = fd.dot(&p)?;
            Ok((p, s))
        }
        _ => {
            let j = jacobian(fd);
            let inv = fd.inverse()?;
            let p = sigma.dot(&inv.transpose())?.scale(j);
            let s = inv.dot(&p)?;
            Ok((p, s))
        }
    }
}

/// Cauchy stress recovered from `S`: `F S Fᵀ / J` with the family's
/// effective gradient.
pub fn push_forward(family: PkFamily, second_pk: &Tensor2, fd: &Tensor2) -> Result<Tensor2> {
    fd.require_legs(family.gradient_legs())?;
    let effective = match family {
        PkFamily::FracSpatial => fd.inverse()?,
        _ => *fd,
    };
    let j = jacobian(&effective);
    Ok(effective
        .dot(second_pk)?
        .dot(&effective.transpose())?
        .scale(1.0 / j))
}

/// Suggested finite-difference step for a body of characteristic size `size`.
pub fn default_step(size: f64) -> f64 {
    1e-4 * size
}

/// `div σᵀ + ρ f` at `x` with second-order central differences of step `h`.
pub fn static_balance_residual(
    sigma_field: &dyn Fn(&Vec3) -> Mat3,
    rho: f64,
    body_force: &Vec3,
    x: &Vec3,
    h: f64,
) -> Vec3 {
    let mut div = Vec3::zeros();
    for j in 0..3 {
        let mut plus = *x;
        let mut minus = *x;
        plus[j] += h;
        minus[j] -= h;
        let d = (sigma_field(&plus) - sigma_field(&minus)) / (2.0 * h);
        // (div σᵀ)_i = ∂σ_ji/∂x_j
        for i in 0..3 {
            div[i] += d[(j, i)];
        }
    }
    div + rho * body_force
}
