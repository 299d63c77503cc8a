use crate::{Complex, Error, Result};

/// Default term budget for open-ended series.
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

/// Result of a truncated series summation.
///
/// `tail_estimate` is relative to `|value|` (absolute when the sum is zero):
/// the largest magnitude among the last three terms (or degree shells)
/// divided by the magnitude of the partial sum. `converged` implies
/// `tail_estimate <= tol` for the tolerance that was requested.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex,
    pub tail_estimate: f64,
    pub terms_used: usize,
    pub converged: bool,
}

impl SeriesValue {
    pub fn exact(value: Complex, terms_used: usize) -> Self {
        SeriesValue {
            value,
            tail_estimate: 0.0,
            terms_used,
            converged: true,
        }
    }

    pub fn scale(self, factor: Complex) -> Self {
        SeriesValue {
            value: self.value * factor,
            ..self
        }
    }
}

/// Running sum with the stopping rule used by every series in the crate:
/// stop once three consecutive terms each satisfy `|term| <= tol·|sum|`.
#[derive(Debug, Clone)]
pub struct Truncation {
    tol: f64,
    sum: Complex,
    recent: [f64; 3],
    quiet: usize,
    terms: usize,
}

impl Truncation {
    pub fn new(tol: f64) -> Self {
        Truncation {
            tol,
            sum: Complex::new(0.0, 0.0),
            recent: [f64::INFINITY; 3],
            quiet: 0,
            terms: 0,
        }
    }

    /// Adds a term; returns `true` once the stopping rule is satisfied.
    pub fn push(&mut self, term: Complex) -> Result<bool> {
        if !(term.re.is_finite() && term.im.is_finite()) {
            return Err(Error::Overflow {
                context: "series term",
            });
        }
        self.sum += term;
        self.terms += 1;
        let mag = term.norm();
        self.recent = [self.recent[1], self.recent[2], mag];
        if mag <= self.tol * self.sum.norm() {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        Ok(self.quiet >= 3)
    }

    pub fn sum(&self) -> Complex {
        self.sum
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    pub fn tail_estimate(&self) -> f64 {
        let worst = self.recent.iter().cloned().fold(0.0_f64, f64::max);
        let scale = self.sum.norm();
        if scale > 0.0 {
            worst / scale
        } else {
            worst
        }
    }

    pub fn finish(&self, converged: bool) -> SeriesValue {
        SeriesValue {
            value: self.sum,
            tail_estimate: self.tail_estimate(),
            terms_used: self.terms,
            converged,
        }
    }

    /// Converts an exhausted budget into an error.
    pub fn not_converged(&self) -> Error {
        Error::NotConverged {
            terms: self.terms,
            tail_estimate: self.tail_estimate(),
        }
    }
}
