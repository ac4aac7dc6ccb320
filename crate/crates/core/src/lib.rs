//! Anisotropic nonlocal continuum kinematics built on Riesz-Caputo
//! fractional derivatives over finite, possibly asymmetric, horizons.
//!
//! * [`frac`]: one-dimensional Caputo and Riesz-Caputo derivatives.
//! * [`kinematics`]: motions and the classical, fractional and composite
//!   deformation gradients.
//! * [`strains`]: strain families, Cauchy-Green tensors, polar decomposition.
//! * [`stress`]: Cauchy and Piola-Kirchhoff stresses and the balance residual.
//! * [`experiments`]: config-driven strain sweeps with CSV output.
//!
//! ```
//! use fracmech::frac::{riesz_caputo, DerivativeSpec, Fn1D, FracOrder, Interval};
//!
//! let f = Fn1D::with_derivative(|t| t, |_| 1.0);
//! let spec = DerivativeSpec::new(FracOrder::new(0.5)?, Interval::around(1.0, 0.5, 0.5)?);
//! // a symmetric horizon of half-width ℓ gives ℓ^{1−α}
//! assert!((riesz_caputo(&f, &spec)? - 0.5f64.sqrt()).abs() < 1e-12);
//! # Ok::<(), fracmech::Error>(())
//! ```

pub mod error;
pub mod experiments;
pub mod frac;
pub mod kinematics;
pub mod strains;
pub mod stress;
pub mod tensor;

pub use error::{Error, Result};
pub use frac::FracOrder;
pub use tensor::{Config, Mat3, Tensor2, Vec3};
