//! Foundational special functions.
//!
//! Everything here is evaluated in double precision. Pochhammer symbols are
//! always finite products so that terminating series with non-positive
//! integer parameters behave exactly.

use alloc::vec::Vec;
use core::f64::consts::PI;


use crate::series::{SeriesValue, Truncation, DEFAULT_MAX_TERMS};
use crate::{ensure_finite, Complex, Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// Lanczos approximation, g = 607/128, fifteen terms.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

// Below this real part the left half-plane is reached by upward recurrence;
// further out the reflection formula is used.
const RECURRENCE_REACH: f64 = 64.0;

/// If `z` is a non-positive integer `-k`, returns `k`.
pub fn nonpositive_integer(z: Complex) -> Option<u64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == libm::round(z.re) && z.re > -9.0e15 {
        Some((-z.re) as u64)
    } else {
        None
    }
}

fn lanczos_ln_gamma(z: Complex) -> Complex {
    let zm = z - 1.0;
    let mut sum = Complex::new(LANCZOS_COEF[0], 0.0);
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += *c / (zm + k as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    (zm + 0.5) * t.ln() - t + sum.ln() + LN_SQRT_2PI
}

/// Principal branch of `ln Γ(z)`, analytic in the plane cut along the
/// non-positive real axis.
///
/// On the positive real axis the real `lgamma` is used directly. In the left
/// half-plane the value comes from upward recurrence, which keeps the branch
/// continuous from the right half-plane. For `Re z < -64` the reflection
/// formula is used and its imaginary part is moved onto the same branch:
/// there the leading Stirling terms differ from `ln Γ` by `-ln(1 - e^{±2πiz})`,
/// whose imaginary part stays inside `(-π/2, π/2)`, so they pick the
/// multiple of `2π` unambiguously.
pub fn ln_gamma(z: Complex) -> Result<Complex> {
    ensure_finite(z, "ln_gamma argument")?;
    if nonpositive_integer(z).is_some() {
        return Err(Error::GammaPole { at: z.re });
    }
    if z.norm() > 1.0e300 {
        return Err(Error::Overflow { context: "ln_gamma" });
    }
    if z.im == 0.0 && z.re > 0.0 {
        return Ok(Complex::new(libm::lgamma(z.re), 0.0));
    }
    let out = if z.re >= 0.5 {
        lanczos_ln_gamma(z)
    } else if z.re > -RECURRENCE_REACH {
        let shift = libm::ceil(0.5 - z.re) as usize;
        let mut acc = lanczos_ln_gamma(z + shift as f64);
        for k in 0..shift {
            let w = z + k as f64;
            // arg of a negative real is taken from the upper side
            let arg = if w.im == 0.0 && w.re < 0.0 {
                PI
            } else {
                w.arg()
            };
            acc -= Complex::new(libm::log(w.norm()), arg);
        }
        acc
    } else {
        let sin_pz = (z * PI).sin();
        let reflected = Complex::new(libm::log(PI), 0.0) - sin_pz.ln() - lanczos_ln_gamma(1.0 - z);
        let upper = if z.im == 0.0 { Complex::new(z.re, 0.0) } else { z };
        let log_z = if z.im == 0.0 {
            Complex::new(libm::log(-z.re), PI)
        } else {
            upper.ln()
        };
        let stirling = (upper - 0.5) * log_z - upper + LN_SQRT_2PI;
        let k = libm::round((reflected.im - stirling.im) / (2.0 * PI));
        Complex::new(reflected.re, reflected.im - 2.0 * PI * k)
    };
    ensure_finite(out, "ln_gamma")
}

/// Real `ln Γ(x)` for `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain("ln_gamma_real needs a positive finite argument"));
    }
    Ok(libm::lgamma(x))
}

/// `ln n!`.
pub fn ln_factorial(n: u64) -> f64 {
    libm::lgamma(n as f64 + 1.0)
}

/// Rising factorial `(a)_n = a(a+1)⋯(a+n-1)` as a finite product.
pub fn pochhammer(a: Complex, n: u32) -> Result<Complex> {
    ensure_finite(a, "pochhammer base")?;
    let mut acc = Complex::new(1.0, 0.0);
    for k in 0..n {
        acc *= a + k as f64;
        if acc == Complex::new(0.0, 0.0) {
            return Ok(acc);
        }
    }
    if acc.re.is_finite() && acc.im.is_finite() {
        Ok(acc)
    } else {
        Err(Error::Overflow {
            context: "pochhammer",
        })
    }
}

/// Table of `(c)_k / k!` for `k = 0..=n`.
///
/// These ratios grow only polynomially in `k`, which keeps long
/// hypergeometric sums inside the floating-point range.
pub fn rising_over_factorial(c: Complex, n: usize) -> Vec<Complex> {
    let mut out = Vec::with_capacity(n + 1);
    let mut v = Complex::new(1.0, 0.0);
    out.push(v);
    for k in 0..n {
        v *= (c + k as f64) / (k as f64 + 1.0);
        out.push(v);
    }
    out
}

/// Gegenbauer polynomial `C_n^λ(x)` from the three-term recurrence.
///
/// `λ <= -1/2` is rejected. `λ = 0` is accepted but degenerate (`C_n^0 = 0`
/// for `n >= 1`); two-dimensional spheres use Fourier modes instead.
pub fn gegenbauer(n: u32, lam: f64, x: f64) -> Result<f64> {
    if !(lam > -0.5) || !lam.is_finite() || !x.is_finite() {
        return Err(Error::Domain("gegenbauer requires λ > -1/2 and finite x"));
    }
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * lam * x;
    for k in 2..=n {
        let k = k as f64;
        let next = (2.0 * (k + lam - 1.0) * x * cur - (k + 2.0 * lam - 2.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    if cur.is_finite() {
        Ok(cur)
    } else {
        Err(Error::Overflow {
            context: "gegenbauer",
        })
    }
}

/// Gauss hypergeometric series `₂F₁(a, b; c; x)` for `|x| < 1`, or any `x`
/// when the series terminates.
pub fn gauss_2f1(a: Complex, b: Complex, c: Complex, x: f64, tol: f64) -> Result<SeriesValue> {
    gauss_2f1_budget(a, b, c, x, tol, DEFAULT_MAX_TERMS)
}

pub fn gauss_2f1_budget(
    a: Complex,
    b: Complex,
    c: Complex,
    x: f64,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesValue> {
    for v in [a, b, c] {
        ensure_finite(v, "gauss_2f1 parameter")?;
    }
    if !x.is_finite() {
        return Err(Error::NonFinite {
            context: "gauss_2f1 argument",
        });
    }
    let stop = match (nonpositive_integer(a), nonpositive_integer(b)) {
        (Some(n), Some(m)) => Some(n.min(m)),
        (Some(n), None) | (None, Some(n)) => Some(n),
        (None, None) => None,
    };
    if stop.is_none() && !(x.abs() < 1.0) {
        return Err(Error::Domain("gauss_2f1 needs |x| < 1 unless terminating"));
    }

    let mut term = Complex::new(1.0, 0.0);
    let mut run = Truncation::new(tol);
    run.push(term)?;
    let mut k = 0u64;
    loop {
        if let Some(n) = stop {
            if k >= n {
                return Ok(SeriesValue::exact(run.sum(), run.terms()));
            }
        } else if run.terms() >= max_terms {
            return Err(run.not_converged());
        }
        let kf = k as f64;
        let den = (c + kf) * (kf + 1.0);
        if den == Complex::new(0.0, 0.0) {
            return Err(Error::DenominatorPole {
                parameter: 0,
                order: k as i64 + 1,
            });
        }
        term *= (a + kf) * (b + kf) / den * x;
        k += 1;
        let done = run.push(term)?;
        if done && stop.is_none() {
            return Ok(run.finish(true));
        }
    }
}

/// Terminating `₃F₂(a1, a2, a3; b1, b2; 1)` as an exact finite sum.
pub fn hyp3f2_unit(
    a1: Complex,
    a2: Complex,
    a3: Complex,
    b1: Complex,
    b2: Complex,
) -> Result<Complex> {
    for v in [a1, a2, a3, b1, b2] {
        ensure_finite(v, "hyp3f2_unit parameter")?;
    }
    let n = [a1, a2, a3]
        .iter()
        .filter_map(|&a| nonpositive_integer(a))
        .min()
        .ok_or(Error::Domain(
            "hyp3f2_unit needs a non-positive integer upper parameter",
        ))?;
    let mut term = Complex::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..n {
        let kf = k as f64;
        let num = (a1 + kf) * (a2 + kf) * (a3 + kf);
        if num == Complex::new(0.0, 0.0) {
            break;
        }
        for (i, b) in [b1, b2].iter().enumerate() {
            if *b + kf == Complex::new(0.0, 0.0) {
                return Err(Error::DenominatorPole {
                    parameter: i,
                    order: k as i64 + 1,
                });
            }
        }
        term *= num / ((b1 + kf) * (b2 + kf) * (kf + 1.0));
        sum += term;
    }
    ensure_finite(sum, "hyp3f2_unit")
}

fn pole_order(b: Complex) -> Option<u64> {
    nonpositive_integer(b)
}

/// Appell `F₂(a; -l1, -l2; b1, b2; x, y)`, summed directly over the finite
/// lattice `m <= l1`, `n <= l2`.
///
/// Alternating binomial weights make this lose digits quickly as `l1`, `l2`
/// grow; at unit arguments prefer [`appell_f2_unit`].
pub fn appell_f2_terminating(
    a: Complex,
    l1: u32,
    l2: u32,
    b1: Complex,
    b2: Complex,
    x: f64,
    y: f64,
) -> Result<Complex> {
    for v in [a, b1, b2] {
        ensure_finite(v, "appell_f2 parameter")?;
    }
    let a_stop = nonpositive_integer(a);
    for (i, b, l) in [(0usize, b1, l1), (1, b2, l2)] {
        if let Some(k) = pole_order(b) {
            // (b)_m vanishes for m > k; it matters when a nonzero term reaches it
            let reach = a_stop.map_or(l as u64, |s| s.min(l as u64));
            if k < reach {
                return Err(Error::DenominatorPole {
                    parameter: i,
                    order: k as i64 + 1,
                });
            }
        }
    }
    let a_max = a_stop.unwrap_or(u64::MAX);
    let mut sum = Complex::new(0.0, 0.0);
    let mut row = Complex::new(1.0, 0.0);
    for m in 0..=l1 as u64 {
        if m > a_max {
            break;
        }
        if m > 0 {
            let mf = (m - 1) as f64;
            row *= (a + mf) * (mf - l1 as f64) / ((b1 + mf) * (mf + 1.0)) * x;
        }
        let mut term = row;
        sum += term;
        for n in 1..=l2 as u64 {
            if m + n > a_max {
                break;
            }
            let nf = (n - 1) as f64;
            term *= (a + (m as f64 + nf)) * (nf - l2 as f64) / ((b2 + nf) * (nf + 1.0)) * y;
            sum += term;
        }
    }
    ensure_finite(sum, "appell_f2_terminating")
}

/// Appell `F₂(a; -l1, -l2; b1, b2; 1, 1)` through the single-sum reduction
///
/// `F₂ = l1! l2! / ((b1)_l1 (b2)_l2) · Σ_k (a)_k (b1-a)_{l1-k} (b2-a)_{l2-k} / (k! (l1-k)! (l2-k)!)`,
///
/// obtained by summing the inner `₂F₁(·;1)` with Chu–Vandermonde and
/// re-expanding. Unlike the direct double sum it stays accurate for
/// `l1, l2` in the hundreds.
pub fn appell_f2_unit(a: Complex, l1: u32, l2: u32, b1: Complex, b2: Complex) -> Result<Complex> {
    for v in [a, b1, b2] {
        ensure_finite(v, "appell_f2_unit parameter")?;
    }
    let ta = rising_over_factorial(a, l1.min(l2) as usize);
    let t1 = rising_over_factorial(b1 - a, l1 as usize);
    let t2 = rising_over_factorial(b2 - a, l2 as usize);
    let d1 = rising_over_factorial(b1, l1 as usize)[l1 as usize];
    let d2 = rising_over_factorial(b2, l2 as usize)[l2 as usize];
    appell_f2_unit_from_tables(&ta, &t1, &t2, d1, d2, l1 as usize, l2 as usize)
}

/// Table-driven core of [`appell_f2_unit`]; `ta`, `t1`, `t2` hold
/// `(c)_k/k!` for `c = a, b1-a, b2-a`, and `d1`, `d2` are `(b1)_l1/l1!`
/// and `(b2)_l2/l2!`.
pub(crate) fn appell_f2_unit_from_tables(
    ta: &[Complex],
    t1: &[Complex],
    t2: &[Complex],
    d1: Complex,
    d2: Complex,
    l1: usize,
    l2: usize,
) -> Result<Complex> {
    let zero = Complex::new(0.0, 0.0);
    if d1 == zero || d2 == zero {
        return Err(Error::DenominatorPole {
            parameter: if d1 == zero { 0 } else { 1 },
            order: if d1 == zero { l1 as i64 } else { l2 as i64 },
        });
    }
    let mut sum = zero;
    for k in 0..=l1.min(l2) {
        sum += ta[k] * t1[l1 - k] * t2[l2 - k];
    }
    ensure_finite(sum / (d1 * d2), "appell_f2_unit")
}

/// `Γ(x)` for real `x`, via `exp(ln Γ)` with the sign of the reflection.
pub fn gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 && x == libm::round(x) {
        return Err(Error::GammaPole { at: x });
    }
    let v = libm::tgamma(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { context: "gamma" })
    }
}
