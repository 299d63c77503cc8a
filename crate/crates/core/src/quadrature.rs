//! Gauss quadrature rules.
//!
//! Jacobi rules are built with Golub–Welsch: the nodes are the eigenvalues of
//! the symmetric Jacobi matrix and the weights come from the first components
//! of its normalized eigenvectors. The implicit QL sweep below only tracks
//! those first components, so a rule costs `O(n²)` instead of `O(n³)`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::special::ln_gamma_real;
use crate::{Error, Result};

/// Family a rule was built for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    /// Weight 1 on `[-1, 1]`.
    GaussLegendre,
    /// Weight `(1-x)^alpha (1+x)^beta` on `[-1, 1]`.
    GaussJacobi { alpha: f64, beta: f64 },
    /// Equal weights `2π/n` at `θ_k = 2πk/n` on `[0, 2π)`; exact for
    /// trigonometric polynomials of degree below `n`.
    PeriodicTrapezoid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_k f(x_k)`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Builds an `n`-point rule of the given kind. `n < 2` and Jacobi exponents
/// `<= -1` are rejected.
pub fn make_rule(kind: RuleKind, n: usize) -> Result<QuadratureRule> {
    if n < 2 {
        return Err(Error::Domain("quadrature rules need at least two nodes"));
    }
    match kind {
        RuleKind::GaussLegendre => {
            let (nodes, weights) = golub_welsch(0.0, 0.0, n)?;
            Ok(QuadratureRule { nodes, weights, kind })
        }
        RuleKind::GaussJacobi { alpha, beta } => {
            if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
                return Err(Error::Domain("Jacobi exponents must exceed -1"));
            }
            let (nodes, weights) = golub_welsch(alpha, beta, n)?;
            Ok(QuadratureRule { nodes, weights, kind })
        }
        RuleKind::PeriodicTrapezoid => {
            let h = 2.0 * PI / n as f64;
            Ok(QuadratureRule {
                nodes: (0..n).map(|k| h * k as f64).collect(),
                weights: vec![h; n],
                kind,
            })
        }
    }
}

pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    make_rule(RuleKind::GaussLegendre, n)
}

pub fn gauss_jacobi(alpha: f64, beta: f64, n: usize) -> Result<QuadratureRule> {
    make_rule(RuleKind::GaussJacobi { alpha, beta }, n)
}

pub fn periodic_trapezoid(n: usize) -> Result<QuadratureRule> {
    make_rule(RuleKind::PeriodicTrapezoid, n)
}

/// Recurrence coefficients of the monic Jacobi polynomials: diagonal `a_k`
/// and squared off-diagonal `b_k` (k >= 1), plus the total mass `μ₀`.
fn jacobi_recurrence(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>, f64) {
    let ab = a + b;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n);
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let d = if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        diag.push(d);
        if k >= 1 {
            // For k = 1 the factor (k+a+b)/(2k+a+b-1) is identically 1, which
            // also covers a + b = -1.
            let num = if k == 1 {
                4.0 * (1.0 + a) * (1.0 + b)
            } else {
                4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (s - 1.0)
            };
            off.push(num / (s * s * (s + 1.0)));
        }
    }
    let ln_mu0 = (ab + 1.0) * core::f64::consts::LN_2
        + ln_gamma_real(a + 1.0).unwrap_or(f64::NAN)
        + ln_gamma_real(b + 1.0).unwrap_or(f64::NAN)
        - ln_gamma_real(ab + 2.0).unwrap_or(f64::NAN);
    (diag, off, libm::exp(ln_mu0))
}

fn golub_welsch(a: f64, b: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (mut d, off, mu0) = jacobi_recurrence(a, b, n);
    if !mu0.is_finite() {
        return Err(Error::Overflow {
            context: "Jacobi weight mass",
        });
    }
    // e[i] couples rows i and i+1; e[n-1] is scratch.
    let mut e: Vec<f64> = off.iter().map(|v| libm::sqrt(*v)).collect();
    e.push(0.0);
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    tql_first_row(&mut d, &mut e, &mut z)?;

    let mut pairs: Vec<(f64, f64)> = d.into_iter().zip(z).map(|(x, v)| (x, mu0 * v * v)).collect();
    pairs.sort_by(|l, r| l.0.total_cmp(&r.0));
    Ok(pairs.into_iter().unzip())
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix,
/// applying the rotations only to the first row `z` of the eigenvector
/// matrix.
fn tql_first_row(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NotConverged {
                    terms: iter,
                    tail_estimate: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_legendre() {
        let r = gauss_legendre(2).unwrap();
        let x = 1.0 / libm::sqrt(3.0);
        assert!((r.nodes[0] + x).abs() < 1e-15 && (r.nodes[1] - x).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-14 && (r.weights[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_first_kind_is_closed_form() {
        // a = b = -1/2: nodes cos((2k-1)π/2n), equal weights π/n.
        let n = 9;
        let r = gauss_jacobi(-0.5, -0.5, n).unwrap();
        for k in 0..n {
            let expect = libm::cos((2.0 * (n - k) as f64 - 1.0) * PI / (2.0 * n as f64));
            assert!((r.nodes[k] - expect).abs() < 1e-14, "{k}");
            assert!((r.weights[k] - PI / n as f64).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(gauss_legendre(1), Err(Error::Domain(_))));
        assert!(matches!(gauss_jacobi(-1.0, 0.0, 5), Err(Error::Domain(_))));
        assert!(matches!(gauss_jacobi(0.0, -1.5, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn trapezoid_integrates_trig_polynomials() {
        let r = periodic_trapezoid(8).unwrap();
        assert!((r.integrate(|t| libm::cos(3.0 * t) * libm::cos(3.0 * t)) - PI).abs() < 1e-13);
        assert!(r.integrate(|t| libm::sin(5.0 * t)).abs() < 1e-13);
    }
}
