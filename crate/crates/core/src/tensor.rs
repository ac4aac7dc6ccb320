//! Second-order tensors in three dimensions whose two legs are tagged with
//! the configuration they live in.
//!
//! A deformation gradient `F = F_aA e_a ⊗ E_A` has a spatial left leg and a
//! material right leg. Products contract the right leg of the first factor
//! with the left leg of the second, and the tags of the contracted legs must
//! agree. Transposition swaps tags, inversion swaps them as well.

use std::fmt;

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

/// Condition numbers above this make an inverse count as singular.
pub const SINGULAR_CONDITION: f64 = 1e12;

/// Reference (material, basis `E_A`) or current (spatial, basis `e_a`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Config {
    Material,
    Spatial,
}

impl Config {
    pub fn other(self) -> Config {
        match self {
            Config::Material => Config::Spatial,
            Config::Spatial => Config::Material,
        }
    }
}

/// Leg tags `(left, right)` of a tensor.
pub type Legs = (Config, Config);

pub const MATERIAL: Legs = (Config::Material, Config::Material);
pub const SPATIAL: Legs = (Config::Spatial, Config::Spatial);
/// Legs of `F` and its fractional material counterpart (`e_a ⊗ E_A`).
pub const TWO_POINT: Legs = (Config::Spatial, Config::Material);
/// Legs of `F⁻¹` and the fractional spatial gradient (`E_A ⊗ e_a`).
pub const TWO_POINT_INVERSE: Legs = (Config::Material, Config::Spatial);

#[derive(Clone, Copy, PartialEq)]
pub struct Tensor2 {
    entries: Mat3,
    legs: Legs,
}

impl Tensor2 {
    pub fn new(entries: Mat3, legs: Legs) -> Self {
        Tensor2 { entries, legs }
    }

    pub fn from_rows(rows: [[f64; 3]; 3], legs: Legs) -> Self {
        Tensor2::new(
            Mat3::from_fn(|i, j| rows[i][j]),
            legs,
        )
    }

    pub fn identity(config: Config) -> Self {
        Tensor2::new(Mat3::identity(), (config, config))
    }

    pub fn zeros(legs: Legs) -> Self {
        Tensor2::new(Mat3::zeros(), legs)
    }

    pub fn diagonal(d: [f64; 3], legs: Legs) -> Self {
        Tensor2::new(Mat3::from_diagonal(&Vec3::new(d[0], d[1], d[2])), legs)
    }

    #[inline]
    pub fn entries(&self) -> &Mat3 {
        &self.entries
    }

    #[inline]
    pub fn legs(&self) -> Legs {
        self.legs
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn to_rows(&self) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.entries[(i, j)];
            }
        }
        out
    }

    /// Row-major copy of the nine entries.
    pub fn to_row_major(&self) -> [f64; 9] {
        let mut out = [0.0; 9];
        for i in 0..3 {
            for j in 0..3 {
                out[3 * i + j] = self.entries[(i, j)];
            }
        }
        out
    }

    pub fn is_one_configuration(&self) -> bool {
        self.legs.0 == self.legs.1
    }

    pub fn transpose(&self) -> Tensor2 {
        Tensor2::new(self.entries.transpose(), (self.legs.1, self.legs.0))
    }

    /// `self · other`, contracting matching legs.
    pub fn dot(&self, other: &Tensor2) -> Result<Tensor2> {
        if self.legs.1 != other.legs.0 {
            return Err(Error::LegMismatch {
                expected: self.legs.1,
                found: other.legs.0,
            });
        }
        Ok(Tensor2::new(
            self.entries * other.entries,
            (self.legs.0, other.legs.1),
        ))
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        self.entries * v
    }

    pub fn scale(&self, s: f64) -> Tensor2 {
        Tensor2::new(self.entries * s, self.legs)
    }

    pub fn add(&self, other: &Tensor2) -> Result<Tensor2> {
        self.require_legs(other.legs)?;
        Ok(Tensor2::new(self.entries + other.entries, self.legs))
    }

    pub fn sub(&self, other: &Tensor2) -> Result<Tensor2> {
        self.require_legs(other.legs)?;
        Ok(Tensor2::new(self.entries - other.entries, self.legs))
    }

    /// Fails unless both legs equal `legs`.
    pub fn require_legs(&self, legs: Legs) -> Result<()> {
        if self.legs.0 != legs.0 {
            return Err(Error::LegMismatch {
                expected: legs.0,
                found: self.legs.0,
            });
        }
        if self.legs.1 != legs.1 {
            return Err(Error::LegMismatch {
                expected: legs.1,
                found: self.legs.1,
            });
        }
        Ok(())
    }

    pub fn determinant(&self) -> f64 {
        let a = &self.entries;
        a[(0, 0)] * (a[(1, 1)] * a[(2, 2)] - a[(1, 2)] * a[(2, 1)])
            - a[(0, 1)] * (a[(1, 0)] * a[(2, 2)] - a[(1, 2)] * a[(2, 0)])
            + a[(0, 2)] * (a[(1, 0)] * a[(2, 1)] - a[(1, 1)] * a[(2, 0)])
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.norm()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.amax()
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|v| v.is_finite())
    }

    /// Inverse by the adjugate. Fails when the Frobenius condition estimate
    /// `‖A‖·‖A⁻¹‖` exceeds [`SINGULAR_CONDITION`].
    pub fn inverse(&self) -> Result<Tensor2> {
        let a = &self.entries;
        let det = self.determinant();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::SingularMatrix(f64::INFINITY));
        }
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            a[(r0, c0)] * a[(r1, c1)] - a[(r0, c1)] * a[(r1, c0)]
        };
        let adj = Mat3::new(
            cof(1, 2, 1, 2),
            -cof(0, 2, 1, 2),
            cof(0, 1, 1, 2),
            -cof(1, 2, 0, 2),
            cof(0, 2, 0, 2),
            -cof(0, 1, 0, 2),
            cof(1, 2, 0, 1),
            -cof(0, 2, 0, 1),
            cof(0, 1, 0, 1),
        );
        let inv = adj / det;
        let cond = a.norm() * inv.norm();
        if !cond.is_finite() || cond > SINGULAR_CONDITION {
            return Err(Error::SingularMatrix(cond));
        }
        Ok(Tensor2::new(inv, (self.legs.1, self.legs.0)))
    }

    /// `½(A + Aᵀ)`; only meaningful for one-configuration tensors.
    pub fn symmetric_part(&self) -> Tensor2 {
        Tensor2::new(0.5 * (self.entries + self.entries.transpose()), self.legs)
    }

    /// Largest entry of `|A − Aᵀ|`.
    pub fn asymmetry(&self) -> f64 {
        (self.entries - self.entries.transpose()).amax()
    }

    pub fn approx_eq(&self, other: &Tensor2, tol: f64) -> bool {
        self.legs == other.legs && (self.entries - other.entries).amax() <= tol
    }
}

impl fmt::Debug for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tensor2")
            .field("legs", &self.legs)
            .field("rows", &self.to_rows())
            .finish()
    }
}
