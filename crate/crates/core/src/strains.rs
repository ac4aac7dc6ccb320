//! Green-Lagrange and Euler-Almansi strains for each choice of deformation
//! gradient, with Cauchy-Green tensors and the polar decomposition.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kinematics::{composite_f, FractionalKinematics, GradientKind, Motion, Point};
use crate::tensor::{Mat3, Tensor2, Vec3};

/// Which gradient the strain pair is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrainFamily {
    /// From `F`.
    Classical,
    /// From `F̃_X` (fractional spatial line element, classical material one).
    FracMaterialBased,
    /// From `F̃_x⁻¹` (classical spatial line element, fractional material one).
    FracSpatialBased,
    /// From `F^α` (both line elements fractional).
    AlphaBased,
}

impl StrainFamily {
    pub const ALL: [StrainFamily; 4] = [
        StrainFamily::Classical,
        StrainFamily::FracMaterialBased,
        StrainFamily::FracSpatialBased,
        StrainFamily::AlphaBased,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            StrainFamily::Classical => "classical",
            StrainFamily::FracMaterialBased => "frac_material",
            StrainFamily::FracSpatialBased => "frac_spatial",
            StrainFamily::AlphaBased => "alpha",
        }
    }

    pub fn gradient_kind(self) -> GradientKind {
        match self {
            StrainFamily::Classical => GradientKind::Classical,
            StrainFamily::FracMaterialBased => GradientKind::FracMaterial,
            StrainFamily::FracSpatialBased => GradientKind::FracSpatial,
            StrainFamily::AlphaBased => GradientKind::AlphaComposite,
        }
    }
}

impl fmt::Display for StrainFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for StrainFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        StrainFamily::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| {
                format!("unknown strain family `{s}` (expected classical, frac_material, frac_spatial or alpha)")
            })
    }
}

/// Material strain `E` and spatial strain `e`, both symmetrized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrainPair {
    pub material: Tensor2,
    pub spatial: Tensor2,
    /// Largest `|S − Sᵀ|` entry before symmetrization, over both tensors.
    pub asymmetry: f64,
}

fn identity_like(t: &Tensor2) -> Mat3 {
    debug_assert!(t.is_one_configuration());
    Mat3::identity()
}

/// `½(FᵀF − I)`.
pub fn green_lagrange(fd: &Tensor2) -> Tensor2 {
    green_lagrange_raw(fd).symmetric_part()
}

fn green_lagrange_raw(fd: &Tensor2) -> Tensor2 {
    let c = right_cauchy_green(fd);
    Tensor2::new(0.5 * (c.entries() - identity_like(&c)), c.legs())
}

/// `½(i − F⁻ᵀF⁻¹)`.
pub fn euler_almansi(fd: &Tensor2) -> Result<Tensor2> {
    Ok(euler_almansi_raw(fd)?.symmetric_part())
}

fn euler_almansi_raw(fd: &Tensor2) -> Result<Tensor2> {
    let inv = fd.inverse()?;
    let b_inv = inv
        .transpose()
        .dot(&inv)
        .expect("inverse transpose legs always compose");
    Ok(Tensor2::new(
        0.5 * (identity_like(&b_inv) - b_inv.entries()),
        b_inv.legs(),
    ))
}

/// `FᵀF`.
pub fn right_cauchy_green(fd: &Tensor2) -> Tensor2 {
    fd.transpose()
        .dot(fd)
        .expect("transpose legs always compose")
}

/// `FFᵀ`.
pub fn left_cauchy_green(fd: &Tensor2) -> Tensor2 {
    fd.dot(&fd.transpose())
        .expect("transpose legs always compose")
}

/// `(C, b) = (FᵀF, FFᵀ)`.
pub fn cauchy_green(fd: &Tensor2) -> (Tensor2, Tensor2) {
    (right_cauchy_green(fd), left_cauchy_green(fd))
}

/// Strain pair from a gradient used directly as `F◇`.
pub fn strain_pair_from_gradient(fd: &Tensor2) -> Result<StrainPair> {
    let material = green_lagrange_raw(fd);
    let spatial = euler_almansi_raw(fd)?;
    Ok(StrainPair {
        asymmetry: material.asymmetry().max(spatial.asymmetry()),
        material: material.symmetric_part(),
        spatial: spatial.symmetric_part(),
    })
}

/// Strain pair of the requested family at `point`.
///
/// The fractional-spatial family uses `Ẽ_x = ½(F̃_x⁻ᵀF̃_x⁻¹ − I)` and
/// `ẽ_x = ½(i − F̃_xᵀF̃_x)`, i.e. `F̃_x⁻¹` takes the role of `F`.
pub fn strain_pair(
    family: StrainFamily,
    motion: &dyn Motion,
    point: Point,
    t: f64,
    kin: &FractionalKinematics,
) -> Result<StrainPair> {
    let g = composite_f(family.gradient_kind(), motion, point, t, kin)?;
    match family {
        StrainFamily::FracSpatialBased => strain_pair_from_gradient(&g.inverse()?),
        _ => strain_pair_from_gradient(&g),
    }
}

/// `ε = ½(∇u + ∇uᵀ)`.
pub fn small_strain_tensor(grad_u: &Tensor2) -> Tensor2 {
    Tensor2::new(
        0.5 * (grad_u.entries() + grad_u.entries().transpose()),
        grad_u.legs(),
    )
}

/// Factors of `F = R U = V R`.
#[derive(Debug, Clone, Copy)]
pub struct PolarDecomposition {
    pub rotation: Tensor2,
    /// Right stretch `U`, legs of `FᵀF`.
    pub right_stretch: Tensor2,
    /// Left stretch `V`, legs of `FFᵀ`.
    pub left_stretch: Tensor2,
    pub iterations: usize,
}

const POLAR_TOL: f64 = 1e-12;
const POLAR_MAX_ITER: usize = 100;

/// Polar decomposition by the scaled Newton iteration
/// `R ← ½(γR + γ⁻¹R⁻ᵀ)` on `det F > 0`.
pub fn polar_decompose(fd: &Tensor2) -> Result<PolarDecomposition> {
    let det = fd.determinant();
    if !(det > 0.0) {
        return Err(Error::NonPositiveJacobian(det));
    }
    let mut r = *fd.entries();
    let mut iterations = 0;
    for k in 1..=POLAR_MAX_ITER {
        iterations = k;
        let inv_t = Tensor2::new(r, fd.legs()).inverse()?.entries().transpose();
        // Frobenius scaling, switched off close to convergence
        let gamma = ((inv_t.norm()) / r.norm()).sqrt();
        let gamma = if (gamma - 1.0).abs() < 1e-3 { 1.0 } else { gamma };
        let next = 0.5 * (gamma * r + inv_t / gamma);
        let change = (next - r).norm();
        r = next;
        if change < POLAR_TOL {
            break;
        }
    }
    let rotation = Tensor2::new(r, fd.legs());
    let u = rotation.transpose().dot(fd)?.symmetric_part();
    let v = fd.dot(&rotation.transpose())?.symmetric_part();
    Ok(PolarDecomposition {
        rotation,
        right_stretch: u,
        left_stretch: v,
        iterations,
    })
}

/// Diagonal of a tensor.
pub fn diagonal(t: &Tensor2) -> Vec3 {
    t.entries().diagonal()
}
