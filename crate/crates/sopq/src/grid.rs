//! Parameter grids and the per-point rows emitted by the grid commands.
//!
//! Points are evaluated in parallel; rows come back in input order (σ outer,
//! α inner, then indices).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sopq_core::oracle::{assoc_oracle_converged, zonal_oracle_converged};
use sopq_core::spherical::{
    assoc_horn, assoc_series, zonal_horn, zonal_q1_series, zonal_series, zonal_special, AssocIndex,
    GroupSignature, SpecialGroup,
};
use sopq_core::{Complex, Error, SeriesValue};

/// Below this magnitude a reference value counts as zero and differences
/// are judged in absolute terms.
pub const ZERO_FLOOR: f64 = 1e-14;

/// Parses `re,im` or a bare `re`.
pub fn parse_sigma(text: &str) -> Result<Complex, String> {
    let mut parts = text.split(',');
    let re = parts.next().unwrap_or("").trim();
    let im = parts.next().map(str::trim).unwrap_or("0");
    if parts.next().is_some() {
        return Err(format!("σ must be `re,im`, got `{text}`"));
    }
    let re: f64 = re.parse().map_err(|_| format!("bad real part in `{text}`"))?;
    let im: f64 = im.parse().map_err(|_| format!("bad imaginary part in `{text}`"))?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(format!("σ must be finite, got `{text}`"));
    }
    Ok(Complex::new(re, im))
}

/// Inclusive, evenly spaced α values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl AlphaRange {
    pub fn single(alpha: f64) -> Self {
        AlphaRange {
            start: alpha,
            stop: alpha,
            count: 1,
        }
    }

    /// Parses `start:stop:count` or a single value.
    pub fn parse(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').map(str::trim).collect();
        let num = |s: &str| s.parse::<f64>().map_err(|_| format!("bad number `{s}` in α range"));
        let range = match parts.as_slice() {
            [a] => AlphaRange::single(num(a)?),
            [a, b, n] => AlphaRange {
                start: num(a)?,
                stop: num(b)?,
                count: n.parse().map_err(|_| format!("bad count `{n}` in α range"))?,
            },
            _ => return Err(format!("α range must be `start:stop:count`, got `{text}`")),
        };
        range.validate()?;
        Ok(range)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.count == 0 {
            return Err("α count must be at least 1".into());
        }
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start < 0.0 || self.stop < self.start {
            return Err(format!("need 0 <= start <= stop, got {}:{}", self.start, self.stop));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 })
            .collect()
    }
}

/// Which formula evaluates the zonal function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZonalMethod {
    Series,
    Horn,
    ClosedForm,
    Special(SpecialGroup),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssocMethod {
    Series,
    Horn,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridRequest {
    pub signature: GroupSignature,
    pub sigmas: Vec<Complex>,
    pub alphas: AlphaRange,
    pub indices: Vec<AssocIndex>,
    pub tol: f64,
}

impl GridRequest {
    pub fn validate(&self) -> Result<(), String> {
        self.alphas.validate()?;
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(format!("tolerance must be positive, got {}", self.tol));
        }
        if self.sigmas.is_empty() {
            return Err("at least one σ is required".into());
        }
        Ok(())
    }

    fn points(&self) -> Vec<(Complex, f64)> {
        let alphas = self.alphas.values();
        self.sigmas
            .iter()
            .flat_map(|s| alphas.iter().map(move |a| (*s, *a)))
            .collect()
    }

    fn indexed_points(&self) -> Vec<(Complex, f64, AssocIndex)> {
        self.points()
            .into_iter()
            .flat_map(|(s, a)| self.indices.iter().map(move |i| (s, a, *i)))
            .collect()
    }
}

/// Exit-status class of a per-row failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FailureKind {
    Input,
    Numerical,
}

pub fn classify(e: &Error) -> FailureKind {
    match e {
        Error::Domain(_)
        | Error::InvalidSpec(_)
        | Error::Parity { .. }
        | Error::SingularMatrix
        | Error::InconsistentInverse { .. } => FailureKind::Input,
        _ => FailureKind::Numerical,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZonalRow {
    pub p: u32,
    pub q: u32,
    pub sigma_re: f64,
    pub sigma_im: f64,
    pub alpha: f64,
    pub re: Option<f64>,
    pub im: Option<f64>,
    pub tail_estimate: Option<f64>,
    pub terms_used: Option<usize>,
    pub error: Option<String>,
    #[serde(skip)]
    pub failure: Option<FailureKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssocRow {
    pub p: u32,
    pub q: u32,
    pub nu: u8,
    pub r: u32,
    pub s: u32,
    pub lambda: u32,
    pub mu: u32,
    pub sigma_re: f64,
    pub sigma_im: f64,
    pub alpha: f64,
    pub re: Option<f64>,
    pub im: Option<f64>,
    pub tail_estimate: Option<f64>,
    pub terms_used: Option<usize>,
    pub error: Option<String>,
    #[serde(skip)]
    pub failure: Option<FailureKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub p: u32,
    pub q: u32,
    pub lambda: u32,
    pub mu: u32,
    pub sigma_re: f64,
    pub sigma_im: f64,
    pub alpha: f64,
    pub series_re: Option<f64>,
    pub series_im: Option<f64>,
    pub oracle_re: Option<f64>,
    pub oracle_im: Option<f64>,
    pub oracle_nodes: Option<usize>,
    pub abs_diff: Option<f64>,
    pub rel_diff: Option<f64>,
    pub pass: bool,
    pub error: Option<String>,
    #[serde(skip)]
    pub failure: Option<FailureKind>,
}

/// Split of a per-point result into the optional row columns.
struct Cells {
    re: Option<f64>,
    im: Option<f64>,
    tail: Option<f64>,
    terms: Option<usize>,
    error: Option<String>,
    failure: Option<FailureKind>,
}

fn cells(r: sopq_core::Result<SeriesValue>) -> Cells {
    match r {
        Ok(v) => Cells {
            re: Some(v.value.re),
            im: Some(v.value.im),
            tail: Some(v.tail_estimate),
            terms: Some(v.terms_used),
            error: None,
            failure: None,
        },
        Err(e) => Cells {
            re: None,
            im: None,
            tail: None,
            terms: None,
            failure: Some(classify(&e)),
            error: Some(e.to_string()),
        },
    }
}

pub fn eval_zonal(
    sig: GroupSignature,
    sigma: Complex,
    alpha: f64,
    tol: f64,
    method: ZonalMethod,
) -> sopq_core::Result<SeriesValue> {
    match method {
        ZonalMethod::Series => zonal_series(sig, sigma, alpha, tol),
        ZonalMethod::Horn => zonal_horn(sig, sigma, alpha, tol),
        ZonalMethod::ClosedForm => {
            if sig.q() != 1 {
                return Err(Error::Domain("the closed form needs q = 1"));
            }
            zonal_q1_series(sig.p(), sigma, alpha, tol)
        }
        ZonalMethod::Special(g) => zonal_special(g, sigma, alpha, tol),
    }
}

pub fn eval_assoc(
    sig: GroupSignature,
    sigma: Complex,
    idx: AssocIndex,
    alpha: f64,
    tol: f64,
    method: AssocMethod,
) -> sopq_core::Result<SeriesValue> {
    match method {
        AssocMethod::Series => assoc_series(sig, sigma, idx, alpha, tol),
        AssocMethod::Horn => assoc_horn(sig, sigma, idx, alpha, tol),
    }
}

pub fn zonal_grid(req: &GridRequest, method: ZonalMethod) -> Vec<ZonalRow> {
    let sig = req.signature;
    req.points()
        .into_par_iter()
        .map(|(sigma, alpha)| {
            let c = cells(eval_zonal(sig, sigma, alpha, req.tol, method));
            ZonalRow {
                p: sig.p(),
                q: sig.q(),
                sigma_re: sigma.re,
                sigma_im: sigma.im,
                alpha,
                re: c.re,
                im: c.im,
                tail_estimate: c.tail,
                terms_used: c.terms,
                error: c.error,
                failure: c.failure,
            }
        })
        .collect()
}

pub fn assoc_grid(req: &GridRequest, method: AssocMethod) -> Vec<AssocRow> {
    let sig = req.signature;
    req.indexed_points()
        .into_par_iter()
        .map(|(sigma, alpha, idx)| {
            let c = cells(eval_assoc(sig, sigma, idx, alpha, req.tol, method));
            AssocRow {
                p: sig.p(),
                q: sig.q(),
                nu: idx.nu,
                r: idx.r,
                s: idx.s,
                lambda: idx.lambda(),
                mu: idx.mu(),
                sigma_re: sigma.re,
                sigma_im: sigma.im,
                alpha,
                re: c.re,
                im: c.im,
                tail_estimate: c.tail,
                terms_used: c.terms,
                error: c.error,
                failure: c.failure,
            }
        })
        .collect()
}

/// Options for [`compare_grid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareOptions {
    /// Largest node count per side the oracle may double up to.
    pub oracle_n: usize,
    /// Relative change at which oracle refinement stops.
    pub oracle_tol: f64,
    /// Multiply every series value by `1 + factor` before comparing. Only
    /// used to check that the harness notices a wrong series.
    pub corrupt: Option<f64>,
}

/// `|a - b| <= tol·|b|`, or `|a - b| <= ZERO_FLOOR` when `b` itself is
/// below the floor.
pub fn within(a: Complex, b: Complex, tol: f64) -> bool {
    let d = (a - b).norm();
    if b.norm() < ZERO_FLOOR {
        d <= ZERO_FLOOR
    } else {
        d <= tol * b.norm()
    }
}

/// Series against quadrature at every grid point. Without indices the zonal
/// function is compared; otherwise each associated index in turn.
pub fn compare_grid(req: &GridRequest, opts: CompareOptions) -> Vec<CompareRow> {
    let sig = req.signature;
    let points: Vec<(Complex, f64, Option<AssocIndex>)> = if req.indices.is_empty() {
        req.points().into_iter().map(|(s, a)| (s, a, None)).collect()
    } else {
        req.indexed_points().into_iter().map(|(s, a, i)| (s, a, Some(i))).collect()
    };
    points
        .into_par_iter()
        .map(|(sigma, alpha, idx)| {
            let (lambda, mu) = idx.map_or((0, 0), |i| (i.lambda(), i.mu()));
            let series = match idx {
                None => zonal_series(sig, sigma, alpha, req.tol.min(1e-15)),
                Some(i) => assoc_series(sig, sigma, i, alpha, req.tol.min(1e-15)),
            }
            .map(|v| match opts.corrupt {
                Some(f) => v.value * (1.0 + f),
                None => v.value,
            });
            let oracle = match idx {
                None => zonal_oracle_converged(sig, sigma, alpha, opts.oracle_tol, opts.oracle_n),
                Some(_) => assoc_oracle_converged(sig, sigma, lambda, mu, alpha, opts.oracle_tol, opts.oracle_n),
            };
            let mut row = CompareRow {
                p: sig.p(),
                q: sig.q(),
                lambda,
                mu,
                sigma_re: sigma.re,
                sigma_im: sigma.im,
                alpha,
                series_re: None,
                series_im: None,
                oracle_re: None,
                oracle_im: None,
                oracle_nodes: None,
                abs_diff: None,
                rel_diff: None,
                pass: false,
                error: None,
                failure: None,
            };
            if let Ok(s) = &series {
                row.series_re = Some(s.re);
                row.series_im = Some(s.im);
            }
            if let Ok((o, n)) = &oracle {
                row.oracle_re = Some(o.re);
                row.oracle_im = Some(o.im);
                row.oracle_nodes = Some(*n);
            }
            match (series, oracle) {
                (Ok(s), Ok((o, _))) => {
                    let d = (s - o).norm();
                    row.abs_diff = Some(d);
                    row.rel_diff = Some(if o.norm() > 0.0 { d / o.norm() } else { d });
                    row.pass = within(s, o, req.tol);
                }
                (Err(e), _) | (_, Err(e)) => {
                    row.failure = Some(classify(&e));
                    row.error = Some(e.to_string());
                }
            }
            row
        })
        .collect()
}
