//! Finite-interval fractional derivatives of order α ∈ (0, 1].
//!
//! Left- and right-sided Caputo derivatives are approximated with the
//! modified (product) trapezoidal rule on `m` uniform subintervals, sampling
//! only the first classical derivative of the integrand. The Riesz-Caputo
//! derivative combines both sides:
//!
//! ```text
//! RC D^α f(t) = ς(α)/2 · ( C D^α_{a,t} f − C D^α_{t,b} f )
//! ```
//!
//! where the right-sided operator already carries the `(−1)` factor, so that
//! for `f(t) = t` both one-sided contributions add up and `α = 1` recovers
//! `f'(t)`.

mod caputo;
mod gamma;

pub use caputo::{
    left_caputo, right_caputo, riesz_caputo, varsigma, DerivativeSpec, Fn1D, FracOrder, Interval,
    VarsigmaMode, DEFAULT_SUBDIVISIONS,
};
pub use gamma::gamma_fn;
