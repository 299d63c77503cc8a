//! Spherical functions of the pseudo-orthogonal groups `SO₀(p,q)`.
//!
//! The crate evaluates zonal and associated spherical functions of the most
//! degenerate principal-series representations through hypergeometric series
//! of two variables, and checks them against direct quadrature of their
//! integral representations. It also carries the combinatorics for
//! transforming derivatives of delta distributions concentrated on a surface
//! when the surface's defining equations are replaced by an equivalent set.
//!
//! Module map:
//!
//! * [`special`]: log-Gamma, Pochhammer symbols, Gegenbauer polynomials,
//!   Gauss `₂F₁`, terminating `₃F₂` and Appell `F₂`.
//! * [`horn`]: generic evaluator for `r`-variable Horn series.
//! * [`spherical`]: zonal and associated functions, closed forms and
//!   normalization constants.
//! * [`quadrature`] and [`oracle`]: Gauss rules and the integral oracles.
//! * [`dist`]: delta-derivative transformation coefficients.
//!
//! # `no_std` support
//!
//! The crate is `no_std` and needs only `alloc`. Elementary functions come
//! from `libm`.

#![no_std]
// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod dist;
mod error;
pub mod horn;
pub mod oracle;
pub mod quadrature;
mod series;
pub mod special;
pub mod spherical;

pub use error::{Error, Result};
pub use series::{SeriesValue, Truncation, DEFAULT_MAX_TERMS};

/// Complex scalar used for `σ`, Pochhammer products and series terms.
pub type Complex = num_complex::Complex64;

pub(crate) fn ensure_finite(z: Complex, context: &'static str) -> Result<Complex> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite { context })
    }
}
