use core::fmt;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument sits on a pole of the Gamma function.
    GammaPole { at: f64 },
    /// A value left the representable floating-point range.
    Overflow { context: &'static str },
    /// A non-finite value was supplied where a finite one is required.
    NonFinite { context: &'static str },
    /// A lower-parameter Pochhammer factor vanished before the series terminated.
    DenominatorPole { parameter: usize, order: i64 },
    /// The series did not meet its tolerance within the term budget.
    NotConverged { terms: usize, tail_estimate: f64 },
    /// Quadrature refinement failed to reach the requested agreement.
    AccuracyNotReached { nodes: usize, change: f64 },
    /// A Horn series specification is malformed or unbalanced.
    InvalidSpec(&'static str),
    /// An argument is outside the operation's domain.
    Domain(&'static str),
    /// Index pair violates the parity constraint `λ + μ ≡ 0 (mod 2)`.
    Parity { lambda: u32, mu: u32 },
    /// The supplied matrix is singular.
    SingularMatrix,
    /// Supplied α is not the inverse of β.
    InconsistentInverse { residual: f64 },
    /// Enumeration would exceed the configured budget.
    BudgetExceeded { limit: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GammaPole { at } => write!(f, "Gamma function pole at {at}"),
            Error::Overflow { context } => write!(f, "overflow in {context}"),
            Error::NonFinite { context } => write!(f, "non-finite value in {context}"),
            Error::DenominatorPole { parameter, order } => write!(
                f,
                "denominator parameter #{parameter} vanishes at Pochhammer order {order}"
            ),
            Error::NotConverged {
                terms,
                tail_estimate,
            } => write!(
                f,
                "series not converged after {terms} terms (tail estimate {tail_estimate:e})"
            ),
            Error::AccuracyNotReached { nodes, change } => write!(
                f,
                "quadrature did not settle: {nodes} nodes, last change {change:e}"
            ),
            Error::InvalidSpec(msg) => write!(f, "invalid series specification: {msg}"),
            Error::Domain(msg) => write!(f, "argument out of domain: {msg}"),
            Error::Parity { lambda, mu } => {
                write!(f, "index pair ({lambda}, {mu}) has odd total parity")
            }
            Error::SingularMatrix => f.write_str("matrix is singular"),
            Error::InconsistentInverse { residual } => {
                write!(f, "alpha is not the inverse of beta (residual {residual:e})")
            }
            Error::BudgetExceeded { limit } => {
                write!(f, "enumeration exceeds budget of {limit} items")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
