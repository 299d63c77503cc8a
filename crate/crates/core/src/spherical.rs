//! Zonal and associated spherical functions of `SO₀(p,q)` for the most
//! degenerate principal-series representations.
//!
//! Conventions. `x = cos χ` lives on the `p` side and carries the index `μ`;
//! `y = cos φ` lives on the `q` side and carries `λ`. Associated functions are
//! labelled by `ν ∈ {0,1}`, `r`, `s` with `λ = ν + 2r` and `μ = ν + 2s`.
//! Every series is an `l`-sum of terminating Appell `F₂` values at `(1,1)`
//! weighted by powers of `tanh² α`; the `F₂` values are formed with the
//! single-sum reduction in [`crate::special::appell_f2_unit`].

use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use crate::horn::{evaluate_horn, HornParam, HornSeriesSpec};
use crate::series::{SeriesValue, Truncation, DEFAULT_MAX_TERMS};
use crate::special::{gauss_2f1, ln_factorial, ln_gamma_real, pochhammer};
use crate::{ensure_finite, Complex, Error, Result};

/// Largest `l` visited by the `l`-sums before giving up.
pub const DEFAULT_L_BUDGET: usize = 500;

const LN_PI: f64 = 1.144_729_885_849_400_2;

/// The pair `(p, q)` of `SO₀(p,q)`, with `p >= 2` and `q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSignature {
    p: u32,
    q: u32,
}

impl GroupSignature {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p < 2 || q < 1 {
            return Err(Error::Domain("group signature needs p >= 2 and q >= 1"));
        }
        Ok(GroupSignature { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `(q, p)`; fails when `q < 2`.
    pub fn swapped(&self) -> Result<Self> {
        GroupSignature::new(self.q, self.p)
    }

    /// Real part of `σ` on the unitary principal line, `-(p+q-2)/2`.
    pub fn principal_re(&self) -> f64 {
        -((self.p + self.q) as f64 - 2.0) / 2.0
    }

    pub fn principal_sigma(&self, t: f64) -> Complex {
        Complex::new(self.principal_re(), t)
    }
}

/// Representation label `(σ, ε)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepLabel {
    pub sigma: Complex,
    pub epsilon: u8,
}

impl RepLabel {
    pub fn new(sigma: Complex, epsilon: u8) -> Result<Self> {
        if epsilon > 1 {
            return Err(Error::Domain("parity ε must be 0 or 1"));
        }
        ensure_finite(sigma, "σ")?;
        Ok(RepLabel { sigma, epsilon })
    }

    /// Principal-series label `σ = -(p+q-2)/2 + i t`, `ε = 0`.
    pub fn principal(sig: GroupSignature, t: f64) -> Self {
        RepLabel {
            sigma: sig.principal_sigma(t),
            epsilon: 0,
        }
    }

    /// Whether `(σ, ε)` and `(2-p-q-σ, ε)` label unitarily equivalent
    /// representations is not decided here; this only returns the partner.
    pub fn partner(&self, sig: GroupSignature) -> Self {
        RepLabel {
            sigma: Complex::new(2.0 - (sig.p + sig.q) as f64, 0.0) - self.sigma,
            epsilon: self.epsilon,
        }
    }

    /// `σ` for evaluating zonal or associated functions of even parity.
    pub fn even_sigma(&self) -> Result<Complex> {
        if self.epsilon != 0 {
            return Err(Error::Domain("only even (ε = 0) representations are evaluated"));
        }
        Ok(self.sigma)
    }
}

/// `(ν, r, s)` with `λ = ν + 2r`, `μ = ν + 2s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AssocIndex {
    pub nu: u8,
    pub r: u32,
    pub s: u32,
}

impl AssocIndex {
    pub fn new(nu: u8, r: u32, s: u32) -> Result<Self> {
        if nu > 1 {
            return Err(Error::Domain("ν must be 0 or 1"));
        }
        Ok(AssocIndex { nu, r, s })
    }

    pub fn lambda(&self) -> u32 {
        self.nu as u32 + 2 * self.r
    }

    pub fn mu(&self) -> u32 {
        self.nu as u32 + 2 * self.s
    }

    /// The index seen from `SO₀(q,p)`: `r` and `s` trade places.
    pub fn swapped(&self) -> Self {
        AssocIndex {
            nu: self.nu,
            r: self.s,
            s: self.r,
        }
    }
}

/// `(λ, μ) -> (ν, r, s)`; `λ + μ` must be even.
pub fn index_map(lambda: u32, mu: u32) -> Result<AssocIndex> {
    if !(lambda + mu).is_multiple_of(2) {
        return Err(Error::Parity { lambda, mu });
    }
    let nu = (lambda % 2) as u8;
    Ok(AssocIndex {
        nu,
        r: (lambda - nu as u32) / 2,
        s: (mu - nu as u32) / 2,
    })
}

fn check_point(alpha: f64, x: f64, y: f64) -> Result<()> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::Domain("α must be finite and non-negative"));
    }
    if !(x.abs() <= 1.0 && y.abs() <= 1.0) {
        return Err(Error::Domain("x and y must lie in [-1, 1]"));
    }
    Ok(())
}

/// `Λ(α; x, y) = 1 + (x² + y²) sinh² α - 2xy sinh α cosh α`.
///
/// Evaluated as `(y cosh α - x sinh α)² + (1 - y²)`, a sum of two
/// non-negative pieces, so the result never cancels to a negative number.
pub fn lambda_kernel(alpha: f64, x: f64, y: f64) -> Result<f64> {
    check_point(alpha, x, y)?;
    let (sh, ch) = (libm::sinh(alpha), libm::cosh(alpha));
    let d = y * ch - x * sh;
    let v = d * d + (1.0 - y) * (1.0 + y);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { context: "Λ kernel" })
    }
}

/// `Λ^{σ/2}` on the principal branch.
pub fn lambda_power(alpha: f64, x: f64, y: f64, sigma: Complex) -> Result<Complex> {
    let lam = lambda_kernel(alpha, x, y)?;
    if lam == 0.0 {
        return if sigma.re > 0.0 {
            Ok(Complex::new(0.0, 0.0))
        } else {
            Err(Error::Domain("Λ vanishes and Re σ <= 0"))
        };
    }
    ensure_finite((sigma * (0.5 * libm::log(lam))).exp(), "Λ^{σ/2}")
}

fn check_alpha(alpha: f64) -> Result<(f64, f64)> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::Domain("α must be finite and non-negative"));
    }
    let ch = libm::cosh(alpha);
    if !ch.is_finite() {
        return Err(Error::Overflow { context: "cosh α" });
    }
    Ok((libm::tanh(alpha), ch))
}

/// Incrementally grown table of `(c)_k / k!`.
struct RatioTable {
    c: Complex,
    values: Vec<Complex>,
}

impl RatioTable {
    fn new(c: Complex) -> Self {
        RatioTable {
            c,
            values: alloc::vec![Complex::new(1.0, 0.0)],
        }
    }

    fn upto(&mut self, n: usize) -> &[Complex] {
        while self.values.len() <= n {
            let k = (self.values.len() - 1) as f64;
            let last = self.values[self.values.len() - 1];
            self.values.push(last * (self.c + k) / (k + 1.0));
        }
        &self.values[..=n]
    }
}

/// `Σ_{l >= max(r,s)} l! (ν+½)_l / ((l-s)! (l-r)!) · F₂(a, s-l, r-l; b1, b2; 1, 1) · t^{2l+ν}`.
///
/// The zonal function is the case `ν = r = s = 0`, where the weight reduces
/// to `(½)_l / l!`.
fn f2_l_sum(
    a: Complex,
    b1: f64,
    b2: f64,
    idx: AssocIndex,
    t: f64,
    tol: f64,
    max_l: usize,
) -> Result<SeriesValue> {
    let (nu, r, s) = (idx.nu as usize, idx.r as usize, idx.s as usize);
    let b1c = Complex::new(b1, 0.0);
    let b2c = Complex::new(b2, 0.0);
    let mut ta = RatioTable::new(a);
    let mut t1 = RatioTable::new(b1c - a);
    let mut t2 = RatioTable::new(b2c - a);
    let mut d1 = RatioTable::new(b1c);
    let mut d2 = RatioTable::new(b2c);

    let l0 = r.max(s);
    let half = nu as f64 + 0.5;
    // Weight at l0 from logs; the ratios afterwards are rational in l.
    let mut weight = libm::exp(
        ln_gamma_real(half + l0 as f64)? - ln_gamma_real(half)? - ln_factorial(l0 as u64)
            + 2.0 * ln_factorial(l0 as u64)
            - ln_factorial((l0 - s) as u64)
            - ln_factorial((l0 - r) as u64),
    );
    let t2pow = t * t;
    let mut tp = libm::pow(t, (2 * l0 + nu) as f64);

    let mut acc = Truncation::new(tol);
    for l in l0..=l0 + max_l {
        let (n1, n2) = (l - s, l - r);
        let kmax = n1.min(n2);
        let ta = ta.upto(kmax);
        let t1 = t1.upto(n1);
        let t2 = t2.upto(n2);
        let den = d1.upto(n1)[n1] * d2.upto(n2)[n2];
        let mut f2 = Complex::new(0.0, 0.0);
        for k in 0..=kmax {
            f2 += ta[k] * t1[n1 - k] * t2[n2 - k];
        }
        let term = f2 / den * (weight * tp);
        if acc.push(term)? {
            return Ok(acc.finish(true));
        }
        let lf = l as f64;
        weight *= (half + lf) / (lf + 1.0) * (lf + 1.0) / (lf + 1.0 - s as f64) * (lf + 1.0)
            / (lf + 1.0 - r as f64);
        tp *= t2pow;
    }
    Err(acc.not_converged())
}

/// Zonal function `Z_σ^{[p,q]}(α)` from the `l`-sum
/// `(1/cosh α) Σ_l (½)_l/l! · F₂(-σ/2, -l, -l; p/2, q/2; 1, 1) · tanh^{2l} α`.
///
/// Non-convergence within [`DEFAULT_L_BUDGET`] shells is reported as an
/// error; in practice this happens for `α` beyond roughly 2.
pub fn zonal_series(sig: GroupSignature, sigma: Complex, alpha: f64, tol: f64) -> Result<SeriesValue> {
    zonal_series_budget(sig, sigma, alpha, tol, DEFAULT_L_BUDGET)
}

pub fn zonal_series_budget(
    sig: GroupSignature,
    sigma: Complex,
    alpha: f64,
    tol: f64,
    max_l: usize,
) -> Result<SeriesValue> {
    ensure_finite(sigma, "σ")?;
    let (t, ch) = check_alpha(alpha)?;
    let idx = AssocIndex { nu: 0, r: 0, s: 0 };
    let v = f2_l_sum(-sigma / 2.0, sig.p as f64 / 2.0, sig.q as f64 / 2.0, idx, t, tol, max_l)?;
    Ok(v.scale(Complex::new(1.0 / ch, 0.0)))
}

/// Which two-variable Horn form to use for [`zonal_horn_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZonalHornForm {
    /// Four numerator and two denominator parameters built around `q`.
    QForm,
    /// The same form with `p` and `q` exchanged.
    PForm,
    /// Five numerator and three denominator parameters, symmetric in the
    /// roles of `p` and `q` up to swapping the two variables.
    Symmetric,
}

fn c(v: f64) -> Complex {
    Complex::new(v, 0.0)
}

fn q_form(p: f64, q: f64, sigma: Complex) -> HornSeriesSpec {
    HornSeriesSpec::new(
        2,
        alloc::vec![
            HornParam::new(-sigma / 2.0, &[1, 0]),
            HornParam::new(c(1.0) - (sigma + q) / 2.0, &[1, 0]),
            HornParam::new((sigma + q) / 2.0, &[0, 1]),
            HornParam::real(0.5, &[1, 1]),
        ],
        alloc::vec![HornParam::real(q / 2.0, &[1, 1]), HornParam::real(p / 2.0, &[1, 0])],
    )
}

/// Horn spec whose value at `(tanh² α, tanh² α)`, divided by `cosh α`, is
/// the zonal function.
pub fn zonal_horn_spec(sig: GroupSignature, sigma: Complex, form: ZonalHornForm) -> HornSeriesSpec {
    let (p, q) = (sig.p as f64, sig.q as f64);
    match form {
        ZonalHornForm::QForm => q_form(p, q, sigma),
        ZonalHornForm::PForm => q_form(q, p, sigma),
        ZonalHornForm::Symmetric => HornSeriesSpec::new(
            2,
            alloc::vec![
                HornParam::real(1.0, &[1, 1]),
                HornParam::real(0.5, &[1, 1]),
                HornParam::new(-sigma / 2.0, &[1, 0]),
                HornParam::new((sigma + q) / 2.0, &[0, 1]),
                HornParam::new((sigma + p) / 2.0, &[0, 1]),
            ],
            alloc::vec![
                HornParam::real(p / 2.0, &[1, 1]),
                HornParam::real(q / 2.0, &[1, 1]),
                HornParam::real(1.0, &[0, 1]),
            ],
        ),
    }
}

/// Zonal function through the `q`-centred Horn form.
pub fn zonal_horn(sig: GroupSignature, sigma: Complex, alpha: f64, tol: f64) -> Result<SeriesValue> {
    zonal_horn_with(sig, sigma, alpha, tol, ZonalHornForm::QForm)
}

pub fn zonal_horn_with(
    sig: GroupSignature,
    sigma: Complex,
    alpha: f64,
    tol: f64,
    form: ZonalHornForm,
) -> Result<SeriesValue> {
    ensure_finite(sigma, "σ")?;
    let (t, ch) = check_alpha(alpha)?;
    let spec = zonal_horn_spec(sig, sigma, form);
    let v = evaluate_horn(&spec, &[t * t, t * t], tol, DEFAULT_MAX_TERMS)?;
    Ok(v.scale(c(1.0 / ch)))
}

/// Closed form for `q = 1`:
/// `₂F₁(-σ/2, (1-σ)/2; p/2; tanh² α) · cosh^σ α`.
pub fn zonal_q1(p: u32, sigma: Complex, alpha: f64) -> Result<Complex> {
    Ok(zonal_q1_series(p, sigma, alpha, 1e-16)?.value)
}

pub fn zonal_q1_series(p: u32, sigma: Complex, alpha: f64, tol: f64) -> Result<SeriesValue> {
    GroupSignature::new(p, 1)?;
    ensure_finite(sigma, "σ")?;
    let (t, ch) = check_alpha(alpha)?;
    let f = gauss_2f1(-sigma / 2.0, (c(1.0) - sigma) / 2.0, c(p as f64 / 2.0), t * t, tol)?;
    let pref = ensure_finite((sigma * libm::log(ch)).exp(), "cosh^σ α")?;
    Ok(f.scale(pref))
}

/// Low-dimensional groups with dedicated formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialGroup {
    So41,
    So32,
    So42,
}

impl SpecialGroup {
    pub fn signature(&self) -> GroupSignature {
        match self {
            SpecialGroup::So41 => GroupSignature { p: 4, q: 1 },
            SpecialGroup::So32 => GroupSignature { p: 3, q: 2 },
            SpecialGroup::So42 => GroupSignature { p: 4, q: 2 },
        }
    }
}

/// `SO₀(4,1)` through its `₂F₁` closed form; `SO₀(3,2)` and `SO₀(4,2)`
/// through the `l`-sum with their fixed `F₂` parameters.
pub fn zonal_special(group: SpecialGroup, sigma: Complex, alpha: f64, tol: f64) -> Result<SeriesValue> {
    match group {
        SpecialGroup::So41 => zonal_q1_series(4, sigma, alpha, tol),
        SpecialGroup::So32 | SpecialGroup::So42 => zonal_series(group.signature(), sigma, alpha, tol),
    }
}

fn ln_side_factor(d: u32, n: u32) -> f64 {
    if d == 2 {
        -0.5 * LN_2
    } else {
        let half = (d as f64 - 2.0) / 2.0;
        0.5 * (libm::log(n as f64 + half) - libm::log(n as f64 + d as f64 - 2.0))
    }
}

/// Constant in front of the associated `l`-sum.
///
/// For `ν = r = s = 0` it equals 1, so the associated function reduces to
/// the zonal one.
pub fn assoc_constant(sig: GroupSignature, sigma: Complex, idx: AssocIndex) -> Result<Complex> {
    let (p, q) = (sig.p as f64, sig.q as f64);
    if sig.q < 2 {
        return Err(Error::Domain("associated functions need q >= 2"));
    }
    let (nu, r, s) = (idx.nu as u32, idx.r, idx.s);
    let (n_p, n_q) = (2 * s + nu, 2 * r + nu);
    let b1 = n_p as f64 + p / 2.0;
    let b2 = n_q as f64 + q / 2.0;
    let ln = (3.0 - (p + q) / 2.0 - nu as f64) * LN_2 - ln_gamma_real(b1)? - ln_gamma_real(b2)?
        + 0.5
            * (LN_PI + ln_gamma_real(p / 2.0)? + ln_gamma_real(q / 2.0)?
                - ln_gamma_real((p - 1.0) / 2.0)?
                - ln_gamma_real((q - 1.0) / 2.0)?)
        + 0.5
            * (ln_gamma_real(n_p as f64 + p - 1.0)? + ln_gamma_real(n_q as f64 + q - 1.0)?
                - ln_factorial(n_p as u64)
                - ln_factorial(n_q as u64))
        + ln_side_factor(sig.p, n_p)
        + ln_side_factor(sig.q, n_q);
    let sign = if (r + s) % 2 == 0 { 1.0 } else { -1.0 };
    let poch = pochhammer(-sigma / 2.0, r + s + nu)?;
    ensure_finite(poch * (sign * libm::exp(ln)), "associated constant")
}

/// Associated function `P_{σλμ}^{[p,q]}(α)` for `p, q >= 2`:
///
/// `C/cosh α · Σ_{l >= max(r,s)} l! (ν+½)_l / ((l-s)! (l-r)!)
///  · F₂(s+r+ν-σ/2, s-l, r-l; 2s+ν+p/2, 2r+ν+q/2; 1, 1) · tanh^{2l+ν} α`
///
/// with `C` from [`assoc_constant`].
pub fn assoc_series(
    sig: GroupSignature,
    sigma: Complex,
    idx: AssocIndex,
    alpha: f64,
    tol: f64,
) -> Result<SeriesValue> {
    ensure_finite(sigma, "σ")?;
    let (t, ch) = check_alpha(alpha)?;
    let constant = assoc_constant(sig, sigma, idx)?;
    let zero = Complex::new(0.0, 0.0);
    if constant == zero {
        return Ok(SeriesValue::exact(zero, 0));
    }
    let (p, q) = (sig.p as f64, sig.q as f64);
    let nu = idx.nu as f64;
    let a = Complex::new((idx.s + idx.r) as f64 + nu, 0.0) - sigma / 2.0;
    let b1 = 2.0 * idx.s as f64 + nu + p / 2.0;
    let b2 = 2.0 * idx.r as f64 + nu + q / 2.0;
    let v = f2_l_sum(a, b1, b2, idx, t, tol, DEFAULT_L_BUDGET)?;
    Ok(v.scale(constant / ch))
}

/// Five-over-three Horn spec for the associated function with `s >= r`,
/// evaluated at `(tanh² α, tanh² α)`; see [`assoc_horn`] for the prefactor.
pub fn assoc_horn_spec(sig: GroupSignature, sigma: Complex, idx: AssocIndex) -> Result<HornSeriesSpec> {
    if idx.s < idx.r {
        return Err(Error::Domain("the associated Horn form needs s >= r; swap p and q"));
    }
    let (p, q) = (sig.p as f64, sig.q as f64);
    let (nu, r, s) = (idx.nu as f64, idx.r as f64, idx.s as f64);
    Ok(HornSeriesSpec::new(
        2,
        alloc::vec![
            HornParam::real(s + 1.0, &[1, 1]),
            HornParam::real(s + nu + 0.5, &[1, 1]),
            HornParam::new(c(s + r + nu) - sigma / 2.0, &[1, 0]),
            HornParam::new((sigma + q) / 2.0, &[0, 1]),
            HornParam::new(c(s - r) + (sigma + p) / 2.0, &[0, 1]),
        ],
        alloc::vec![
            HornParam::real(2.0 * s + nu + p / 2.0, &[1, 1]),
            HornParam::real(s + r + nu + q / 2.0, &[1, 1]),
            HornParam::real(1.0 + s - r, &[0, 1]),
        ],
    ))
}

/// Associated function through the two-variable Horn form. Cases with
/// `s < r` are evaluated on `SO₀(q,p)` with `r` and `s` exchanged.
pub fn assoc_horn(
    sig: GroupSignature,
    sigma: Complex,
    idx: AssocIndex,
    alpha: f64,
    tol: f64,
) -> Result<SeriesValue> {
    if idx.s < idx.r {
        return assoc_horn(sig.swapped()?, sigma, idx.swapped(), alpha, tol);
    }
    ensure_finite(sigma, "σ")?;
    let (t, ch) = check_alpha(alpha)?;
    let constant = assoc_constant(sig, sigma, idx)?;
    let spec = assoc_horn_spec(sig, sigma, idx)?;
    let q = sig.q as f64;
    let (nu, r, s) = (idx.nu as f64, idx.r, idx.s);
    let d = s - r;
    let a = c(s as f64 + r as f64 + nu) - sigma / 2.0;
    let b2 = 2.0 * r as f64 + nu + q / 2.0;
    // (2s+ν)!/4^s = s! (ν+½)_s
    let lead = libm::exp(ln_factorial(s as u64) + ln_gamma_real(nu + 0.5 + s as f64)? - ln_gamma_real(nu + 0.5)?);
    let ratio = pochhammer(c(b2) - a, d)? / pochhammer(c(b2), d)? / libm::exp(ln_factorial(d as u64));
    let tp = libm::pow(t, (2 * s + idx.nu as u32) as f64);
    let v = evaluate_horn(&spec, &[t * t, t * t], tol, DEFAULT_MAX_TERMS)?;
    Ok(v.scale(constant * ratio * (lead * tp / ch)))
}

fn ln_gamma(x: f64) -> Result<f64> {
    ln_gamma_real(x)
}

fn ln_int(n: i64) -> f64 {
    libm::log(n as f64)
}

/// `a^p_{μm}` for the `q = 2` basis, or its `p = 2` mirror image.
fn norm_one_sided(d: u32, k: u32, m: u32) -> Result<f64> {
    let d = d as f64;
    let ln = ln_gamma(m as f64 + (d - 2.0) / 2.0)? - LN_PI
        + 0.5
            * ((d + 2.0 * m as f64 - 5.0) * LN_2 + ln_factorial((k - m) as u64)
                + ln_int(2 * k as i64 + d as i64 - 2)
                - ln_gamma(k as f64 + m as f64 + d - 2.0)?);
    Ok(libm::exp(ln))
}

/// Normalization `a` of the canonical basis element with labels
/// `(λ, l; μ, m)`, chosen so the basis is orthonormal.
///
/// * `p, q >= 3`: the two-sided constant `a^{pq}_{λlμm}`.
/// * `q = 2`: `a^p_{μm}` (`λ`, `l` only label the Fourier mode);
///   `p = 2` mirrors this with `a^q_{λl}`.
/// * `p = q = 2`: `1/(2π)`.
pub fn norm_constant_a(sig: GroupSignature, lambda: u32, l: u32, mu: u32, m: u32) -> Result<f64> {
    if lambda < l || mu < m {
        return Err(Error::Domain("basis labels need λ >= l and μ >= m"));
    }
    let (p, q) = (sig.p, sig.q);
    match (p, q) {
        (_, 1) => Err(Error::Domain("no canonical basis constant for q = 1")),
        (2, 2) => Ok(1.0 / (2.0 * PI)),
        (_, 2) => norm_one_sided(p, mu, m),
        (2, _) => norm_one_sided(q, lambda, l),
        _ => {
            let (pf, qf) = (p as f64, q as f64);
            let ln = ln_gamma(l as f64 + (qf - 2.0) / 2.0)? + ln_gamma(m as f64 + (pf - 2.0) / 2.0)?
                - LN_PI
                - (4.0 - l as f64 - m as f64 - (pf + qf) / 2.0) * LN_2
                + 0.5
                    * (ln_factorial((lambda - l) as u64) + ln_factorial((mu - m) as u64)
                        + ln_int(2 * lambda as i64 + q as i64 - 2)
                        + ln_int(2 * mu as i64 + p as i64 - 2)
                        - ln_gamma(lambda as f64 + l as f64 + qf - 2.0)?
                        - ln_gamma(mu as f64 + m as f64 + pf - 2.0)?);
            Ok(libm::exp(ln))
        }
    }
}

/// Single-sphere factor of the associated-function prefactor, `d >= 3`.
fn ln_assoc_side(d: u32, k: u32) -> Result<f64> {
    let d = d as f64;
    Ok(ln_gamma((d - 2.0) / 2.0)?
        + 0.5
            * ((d - 6.0) * LN_2 + ln_factorial(k as u64) + libm::log(2.0 * k as f64 + d - 2.0)
                + ln_gamma(d / 2.0)?
                - 3.5 * LN_PI
                - ln_gamma(k as f64 + d - 2.0)?
                - ln_gamma((d - 1.0) / 2.0)?))
}

/// Prefactor of the integral representation of the associated function:
/// `a^{pq}_{λμ}` for `p, q >= 3`, `a^p_μ` for `q = 2` (mirrored for `p = 2`)
/// and `1/(4π²)` for `p = q = 2`.
pub fn norm_constant_assoc(sig: GroupSignature, lambda: u32, mu: u32) -> Result<f64> {
    let (p, q) = (sig.p, sig.q);
    match (p, q) {
        (_, 1) => Err(Error::Domain("no associated functions for q = 1")),
        (2, 2) => Ok(1.0 / (4.0 * PI * PI)),
        (_, 2) => Ok(libm::exp(ln_assoc_side(p, mu)?)),
        (2, _) => Ok(libm::exp(ln_assoc_side(q, lambda)?)),
        _ => {
            // a^{pq}_{λμ} = a^p_μ a^q_λ · 4π² in this normalization.
            let ln = ln_assoc_side(p, mu)? + ln_assoc_side(q, lambda)? + libm::log(4.0 * PI * PI);
            Ok(libm::exp(ln))
        }
    }
}
