//! Quadrature of the integral representations, used as an independent check
//! on the series.
//!
//! Each sphere contributes one factor. With `d` its dimension parameter
//! (`p` or `q`):
//!
//! * `d = 1`: the two points `±1`, weight ½ each;
//! * `d = 2`: an angle on `[0, 2π)` with the periodic trapezoid rule;
//! * `d >= 3`: `x ∈ [-1, 1]` with weight `(1-x²)^{(d-3)/2}` and a
//!   Gauss–Jacobi rule, which absorbs the endpoint behaviour exactly.
//!
//! Zonal values integrate against the normalized measure (total mass 1), so
//! the oracle returns exactly 1 at `α = 0` or `σ = 0` up to rounding.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::quadrature::{gauss_jacobi, periodic_trapezoid};
use crate::special::{gegenbauer, ln_gamma_real};
use crate::spherical::{lambda_power, norm_constant_assoc, GroupSignature};
use crate::{Complex, Error, Result};

/// Nodes and weights for one sphere; `cos` holds `x` (or `cos θ`), `angle`
/// holds `θ` when the side is a circle.
struct Side {
    dim: u32,
    cos: Vec<f64>,
    angle: Vec<f64>,
    weights: Vec<f64>,
    mass: f64,
}

impl Side {
    fn new(dim: u32, n: usize) -> Result<Self> {
        match dim {
            0 => Err(Error::Domain("sphere dimension must be positive")),
            1 => Ok(Side {
                dim,
                cos: alloc::vec![1.0, -1.0],
                angle: Vec::new(),
                weights: alloc::vec![1.0, 1.0],
                mass: 2.0,
            }),
            2 => {
                let r = periodic_trapezoid(n)?;
                Ok(Side {
                    dim,
                    cos: r.nodes.iter().map(|t| libm::cos(*t)).collect(),
                    angle: r.nodes,
                    weights: r.weights,
                    mass: 2.0 * PI,
                })
            }
            _ => {
                let e = (dim as f64 - 3.0) / 2.0;
                let r = gauss_jacobi(e, e, n)?;
                let d = dim as f64;
                let mass = libm::exp(
                    0.5 * libm::log(PI) + ln_gamma_real((d - 1.0) / 2.0)? - ln_gamma_real(d / 2.0)?,
                );
                Ok(Side {
                    dim,
                    cos: r.nodes,
                    angle: Vec::new(),
                    weights: r.weights,
                    mass,
                })
            }
        }
    }

    /// Basis function of index `k` at node `i`: `C_k^{(d-2)/2}(x)` or
    /// `e^{-ikθ}`.
    fn basis(&self, k: u32, i: usize) -> Result<Complex> {
        match self.dim {
            1 if k == 0 => Ok(Complex::new(1.0, 0.0)),
            1 => Err(Error::Domain("a zero-dimensional sphere only carries the constant mode")),
            2 => Ok(Complex::from_polar(1.0, -(k as f64) * self.angle[i])),
            d => Ok(Complex::new(gegenbauer(k, (d as f64 - 2.0) / 2.0, self.cos[i])?, 0.0)),
        }
    }

    /// Orthonormal function of index `k` (normalized measure) at node `i`,
    /// real part only for circles: the `±k` modes are folded by the caller.
    fn orthonormal(&self, k: u32, i: usize) -> Result<f64> {
        match self.dim {
            1 => self.basis(k, i).map(|v| v.re),
            2 => Ok(libm::cos(k as f64 * self.angle[i])),
            d => {
                let lam = (d as f64 - 2.0) / 2.0;
                // ∫ (C_k^λ)² (1-x²)^{λ-½} dx = π 2^{1-2λ} Γ(k+2λ) / (k! (k+λ) Γ(λ)²)
                let ln_h = libm::log(PI) + (1.0 - 2.0 * lam) * core::f64::consts::LN_2
                    + ln_gamma_real(k as f64 + 2.0 * lam)?
                    - ln_gamma_real(k as f64 + 1.0)?
                    - libm::log(k as f64 + lam)
                    - 2.0 * ln_gamma_real(lam)?;
                let norm = libm::exp(0.5 * (ln_h - libm::log(self.mass)));
                Ok(gegenbauer(k, lam, self.cos[i])? / norm)
            }
        }
    }
}

fn check(alpha: f64, n: usize) -> Result<()> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::Domain("α must be finite and non-negative"));
    }
    if n < 2 {
        return Err(Error::Domain("oracle needs at least two nodes per side"));
    }
    Ok(())
}

/// Zonal function by tensor-product quadrature with `n` nodes per side.
pub fn zonal_oracle(sig: GroupSignature, sigma: Complex, alpha: f64, n: usize) -> Result<Complex> {
    check(alpha, n)?;
    let sp = Side::new(sig.p(), n)?;
    let sq = Side::new(sig.q(), n)?;
    let mut acc = Complex::new(0.0, 0.0);
    for (x, wx) in sp.cos.iter().zip(&sp.weights) {
        let mut inner = Complex::new(0.0, 0.0);
        for (y, wy) in sq.cos.iter().zip(&sq.weights) {
            inner += lambda_power(alpha, *x, *y, sigma)? * *wy;
        }
        acc += inner * *wx;
    }
    Ok(acc / (sp.mass * sq.mass))
}

/// Associated function `P_{σλμ}` by quadrature of its integral
/// representation; `λ` belongs to the `q` side, `μ` to the `p` side.
pub fn assoc_oracle(
    sig: GroupSignature,
    sigma: Complex,
    lambda: u32,
    mu: u32,
    alpha: f64,
    n: usize,
) -> Result<Complex> {
    check(alpha, n)?;
    if !(lambda + mu).is_multiple_of(2) {
        return Err(Error::Parity { lambda, mu });
    }
    let pref = norm_constant_assoc(sig, lambda, mu)?;
    let sp = Side::new(sig.p(), n)?;
    let sq = Side::new(sig.q(), n)?;
    let bq: Vec<Complex> = (0..sq.cos.len())
        .map(|j| sq.basis(lambda, j))
        .collect::<Result<_>>()?;
    let mut acc = Complex::new(0.0, 0.0);
    for (i, (x, wx)) in sp.cos.iter().zip(&sp.weights).enumerate() {
        let mut inner = Complex::new(0.0, 0.0);
        for (j, (y, wy)) in sq.cos.iter().zip(&sq.weights).enumerate() {
            inner += lambda_power(alpha, *x, *y, sigma)? * bq[j] * *wy;
        }
        acc += inner * sp.basis(mu, i)? * *wx;
    }
    Ok(acc * pref)
}

/// Repeats `eval(n)` with doubled `n` until successive values agree to
/// `tol` (relative, absolute below magnitude 1). Returns the last value and
/// the node count that produced it.
pub fn converge<F>(mut eval: F, n_start: usize, n_max: usize, tol: f64) -> Result<(Complex, usize)>
where
    F: FnMut(usize) -> Result<Complex>,
{
    let mut n = n_start.max(2);
    let mut prev = eval(n)?;
    loop {
        let next_n = n * 2;
        if next_n > n_max {
            return Err(Error::AccuracyNotReached {
                nodes: n,
                change: f64::NAN,
            });
        }
        let cur = eval(next_n)?;
        let change = (cur - prev).norm() / cur.norm().max(1.0);
        if change <= tol {
            return Ok((cur, next_n));
        }
        if next_n * 2 > n_max {
            return Err(Error::AccuracyNotReached { nodes: next_n, change });
        }
        prev = cur;
        n = next_n;
    }
}

/// [`zonal_oracle`] refined by doubling from 16 nodes up to `n_max`.
pub fn zonal_oracle_converged(
    sig: GroupSignature,
    sigma: Complex,
    alpha: f64,
    tol: f64,
    n_max: usize,
) -> Result<(Complex, usize)> {
    converge(|n| zonal_oracle(sig, sigma, alpha, n), 16, n_max, tol)
}

/// [`assoc_oracle`] refined by doubling from 16 nodes up to `n_max`.
pub fn assoc_oracle_converged(
    sig: GroupSignature,
    sigma: Complex,
    lambda: u32,
    mu: u32,
    alpha: f64,
    tol: f64,
    n_max: usize,
) -> Result<(Complex, usize)> {
    converge(|n| assoc_oracle(sig, sigma, lambda, mu, alpha, n), 16, n_max, tol)
}

/// Coefficient source for [`expansion_residual_with`].
pub type CoefficientFn<'a> = dyn FnMut(u32, u32) -> Result<Complex> + 'a;

/// L² distance, in the normalized product measure, between `Λ^{σ/2}` and its
/// truncated harmonic expansion `Σ P_{σλμ} Φ_μ(x) Φ_λ(y)` over `λ + μ <=
/// cutoff`, where `P` comes from [`crate::spherical::assoc_series`] and `Φ`
/// are the orthonormal zonal harmonics of each sphere. Circle sides carry
/// both `±k` modes; the norm is computed with `n` nodes per side. Requires
/// `p, q >= 2`.
pub fn expansion_residual(
    sig: GroupSignature,
    sigma: Complex,
    alpha: f64,
    cutoff: u32,
    n: usize,
) -> Result<f64> {
    let mut coeff = |lambda: u32, mu: u32| -> Result<Complex> {
        let idx = crate::spherical::index_map(lambda, mu)?;
        Ok(crate::spherical::assoc_series(sig, sigma, idx, alpha, 1e-16)?.value)
    };
    expansion_residual_with(sig, sigma, alpha, cutoff, n, &mut coeff)
}

/// [`expansion_residual`] with caller-supplied coefficients `P(λ, μ)`.
pub fn expansion_residual_with(
    sig: GroupSignature,
    sigma: Complex,
    alpha: f64,
    cutoff: u32,
    n: usize,
    coeff: &mut CoefficientFn<'_>,
) -> Result<f64> {
    check(alpha, n)?;
    if sig.q() < 2 {
        return Err(Error::Domain("expansion residual needs q >= 2"));
    }
    let sp = Side::new(sig.p(), n)?;
    let sq = Side::new(sig.q(), n)?;
    let fold = |side: &Side, k: u32| if side.dim == 2 && k > 0 { 2.0 } else { 1.0 };

    let mut modes = Vec::new();
    for lambda in 0..=cutoff {
        for mu in 0..=(cutoff - lambda) {
            if (lambda + mu) % 2 == 0 {
                let pc = coeff(lambda, mu)? * (fold(&sq, lambda) * fold(&sp, mu));
                let fx: Vec<f64> = (0..sp.cos.len()).map(|i| sp.orthonormal(mu, i)).collect::<Result<_>>()?;
                let fy: Vec<f64> = (0..sq.cos.len()).map(|j| sq.orthonormal(lambda, j)).collect::<Result<_>>()?;
                modes.push((pc, fx, fy));
            }
        }
    }

    let mut acc = 0.0;
    for (i, (x, wx)) in sp.cos.iter().zip(&sp.weights).enumerate() {
        let mut inner = 0.0;
        for (j, (y, wy)) in sq.cos.iter().zip(&sq.weights).enumerate() {
            let mut approx = Complex::new(0.0, 0.0);
            for (pc, fx, fy) in &modes {
                approx += *pc * (fx[i] * fy[j]);
            }
            inner += (lambda_power(alpha, *x, *y, sigma)? - approx).norm_sqr() * *wy;
        }
        acc += inner * *wx;
    }
    Ok(libm::sqrt(acc / (sp.mass * sq.mass)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_normalized() {
        for &(p, q) in &[(2, 1), (3, 1), (2, 2), (3, 2), (5, 4)] {
            let sig = GroupSignature::new(p, q).unwrap();
            let z = zonal_oracle(sig, sig.principal_sigma(1.0), 0.0, 8).unwrap();
            assert!((z - 1.0).norm() < 1e-13, "{p} {q}: {z}");
            let z = zonal_oracle(sig, Complex::new(0.0, 0.0), 0.7, 8).unwrap();
            assert!((z - 1.0).norm() < 1e-13, "{p} {q}: {z}");
        }
    }

    #[test]
    fn parity_and_domain_errors() {
        let sig = GroupSignature::new(3, 3).unwrap();
        let s = sig.principal_sigma(0.0);
        assert!(matches!(assoc_oracle(sig, s, 1, 2, 0.3, 8), Err(Error::Parity { .. })));
        assert!(assoc_oracle(GroupSignature::new(3, 1).unwrap(), s, 0, 0, 0.3, 8).is_err());
        assert!(zonal_oracle(sig, s, -1.0, 8).is_err());
    }

    #[test]
    fn doubling_reports_failure() {
        let r = converge(|n| Ok(Complex::new(n as f64, 0.0)), 4, 64, 1e-12);
        assert!(matches!(r, Err(Error::AccuracyNotReached { .. })));
    }
}
