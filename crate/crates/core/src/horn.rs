//! Generalized hypergeometric Horn series in `r` variables,
//!
//! `Σ_n ∏_α (a_α)_{u_α·n} / ∏_β (b_β)_{v_β·n} · ∏_i x_i^{n_i} / n_i!`,
//!
//! summed over the lattice `n ∈ ℕ^r` in shells of constant total degree.
//! Each lattice term is obtained from a neighbour in the previous shell by
//! multiplying the rational Pochhammer increments along one lattice edge.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::special::nonpositive_integer;
use crate::{ensure_finite, Complex, Error, Result, SeriesValue, Truncation, DEFAULT_MAX_TERMS};

/// Largest and smallest coefficient accepted in a `u` or `v` row.
pub const MAX_COEFFICIENT: i32 = 2;
pub const MIN_COEFFICIENT: i32 = -1;

/// One upper or lower parameter together with its coefficient row.
#[derive(Debug, Clone, PartialEq)]
pub struct HornParam {
    pub value: Complex,
    pub row: Vec<i32>,
}

impl HornParam {
    pub fn new(value: Complex, row: &[i32]) -> Self {
        HornParam {
            value,
            row: row.to_vec(),
        }
    }

    pub fn real(value: f64, row: &[i32]) -> Self {
        Self::new(Complex::new(value, 0.0), row)
    }

    fn weight(&self, n: &[u32]) -> i64 {
        self.row
            .iter()
            .zip(n)
            .map(|(&u, &k)| u as i64 * k as i64)
            .sum()
    }
}

/// Parameter lists and coefficient matrices of an `r`-variable Horn series.
#[derive(Debug, Clone, PartialEq)]
pub struct HornSeriesSpec {
    pub variables: usize,
    pub numerator: Vec<HornParam>,
    pub denominator: Vec<HornParam>,
}

/// Per-variable outcome of the balance check `Σ_α u_αj = Σ_β v_βj + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariableBalance {
    pub numerator_sum: i32,
    pub denominator_sum: i32,
    pub balanced: bool,
}

/// Result of [`validate_spec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    pub variables: Vec<VariableBalance>,
    /// Structural problems (wrong row length, out-of-range coefficient, ...).
    pub problems: Vec<&'static str>,
}

impl BalanceReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty() && self.variables.iter().all(|v| v.balanced)
    }
}

impl HornSeriesSpec {
    pub fn new(variables: usize, numerator: Vec<HornParam>, denominator: Vec<HornParam>) -> Self {
        HornSeriesSpec {
            variables,
            numerator,
            denominator,
        }
    }

    /// One-variable `₂F₁(a, b; c; x)`.
    pub fn gauss_2f1(a: Complex, b: Complex, c: Complex) -> Self {
        HornSeriesSpec::new(
            1,
            vec![HornParam::new(a, &[1]), HornParam::new(b, &[1])],
            vec![HornParam::new(c, &[1])],
        )
    }

    /// Copy with both parameter lists in a canonical order, so that
    /// evaluation does not depend on how the lists were written down.
    pub fn canonical(&self) -> Self {
        fn key(a: &HornParam, b: &HornParam) -> Ordering {
            a.row
                .cmp(&b.row)
                .then(a.value.re.total_cmp(&b.value.re))
                .then(a.value.im.total_cmp(&b.value.im))
        }
        let mut out = self.clone();
        out.numerator.sort_by(key);
        out.denominator.sort_by(key);
        out
    }

    /// If some upper parameter is `-N` with every coefficient `>= 1`, the
    /// series is a polynomial of total degree at most `N`.
    pub fn termination_degree(&self) -> Option<u64> {
        self.numerator
            .iter()
            .filter(|p| !p.row.is_empty() && p.row.iter().all(|&u| u >= 1))
            .filter_map(|p| nonpositive_integer(p.value))
            .min()
    }
}

/// Checks row shapes, coefficient range and the balance condition.
pub fn validate_spec(spec: &HornSeriesSpec) -> BalanceReport {
    let r = spec.variables;
    let mut problems = Vec::new();
    if r == 0 {
        problems.push("at least one variable is required");
    }
    let all = spec.numerator.iter().chain(spec.denominator.iter());
    for p in all {
        if p.row.len() != r {
            problems.push("coefficient row length differs from the number of variables");
        } else if p
            .row
            .iter()
            .any(|&u| !(MIN_COEFFICIENT..=MAX_COEFFICIENT).contains(&u))
        {
            problems.push("coefficient outside the supported range -1..=2");
        }
        if !(p.value.re.is_finite() && p.value.im.is_finite()) {
            problems.push("non-finite parameter");
        }
    }
    let column = |list: &[HornParam], j: usize| -> i32 {
        list.iter().map(|p| p.row.get(j).copied().unwrap_or(0)).sum()
    };
    let variables = (0..r)
        .map(|j| {
            let numerator_sum = column(&spec.numerator, j);
            let denominator_sum = column(&spec.denominator, j);
            VariableBalance {
                numerator_sum,
                denominator_sum,
                balanced: numerator_sum == denominator_sum + 1,
            }
        })
        .collect();
    problems.dedup();
    BalanceReport {
        variables,
        problems,
    }
}

/// `(a)_{w+u} / (a)_w` for a coefficient step `u ∈ {-1, 0, 1, 2}`.
/// Returns `None` when the step divides by zero.
fn poch_step(a: Complex, w: i64, u: i32) -> Option<Complex> {
    let base = a + w as f64;
    match u {
        0 => Some(Complex::new(1.0, 0.0)),
        1 => Some(base),
        2 => Some(base * (base + 1.0)),
        -1 => {
            let d = base - 1.0;
            if d == Complex::new(0.0, 0.0) {
                None
            } else {
                Some(d.inv())
            }
        }
        _ => unreachable!("coefficient range is validated"),
    }
}

/// `(a)_w` for a possibly negative `w`.
fn poch_signed(a: Complex, w: i64) -> Option<Complex> {
    let mut acc = Complex::new(1.0, 0.0);
    if w >= 0 {
        for k in 0..w {
            acc *= a + k as f64;
        }
    } else {
        for k in 1..=(-w) {
            let d = a - k as f64;
            if d == Complex::new(0.0, 0.0) {
                return None;
            }
            acc /= d;
        }
    }
    Some(acc)
}

struct Engine<'a> {
    spec: &'a HornSeriesSpec,
    x: &'a [f64],
}

impl Engine<'_> {
    /// Term at `n` computed from scratch.
    fn direct(&self, n: &[u32]) -> Result<Complex> {
        let zero = Complex::new(0.0, 0.0);
        // Without this, a zero argument lets the parameter products overflow
        // before the zero power is applied, leaving 0·∞.
        if n.iter().zip(self.x).any(|(&k, &xi)| k > 0 && xi == 0.0) {
            return Ok(zero);
        }
        let mut num = Complex::new(1.0, 0.0);
        for (i, p) in self.spec.numerator.iter().enumerate() {
            let f = poch_signed(p.value, p.weight(n)).ok_or(Error::DenominatorPole {
                parameter: i,
                order: p.weight(n),
            })?;
            num *= f;
        }
        if num == zero {
            return Ok(zero);
        }
        let mut acc = num;
        for (i, p) in self.spec.denominator.iter().enumerate() {
            let w = p.weight(n);
            let f = poch_signed(p.value, w);
            match f {
                Some(f) if f != zero => acc /= f,
                _ => {
                    return Err(Error::DenominatorPole {
                        parameter: i,
                        order: w,
                    })
                }
            }
        }
        for (&k, &xi) in n.iter().zip(self.x) {
            for j in 1..=k {
                acc *= xi / j as f64;
            }
        }
        Ok(acc)
    }

    /// Term at `n` from the term at `n - e_j`.
    fn step(&self, prev: Complex, from: &[u32], j: usize) -> Result<Complex> {
        let zero = Complex::new(0.0, 0.0);
        let mut num = Complex::new(1.0, 0.0);
        for (i, p) in self.spec.numerator.iter().enumerate() {
            let f = poch_step(p.value, p.weight(from), p.row[j]).ok_or(Error::DenominatorPole {
                parameter: i,
                order: p.weight(from) + p.row[j] as i64,
            })?;
            num *= f;
        }
        if num == zero {
            return Ok(zero);
        }
        let mut acc = prev * num;
        for (i, p) in self.spec.denominator.iter().enumerate() {
            let w = p.weight(from);
            match poch_step(p.value, w, p.row[j]) {
                Some(f) if f != zero => acc /= f,
                _ => {
                    return Err(Error::DenominatorPole {
                        parameter: i,
                        order: w + p.row[j] as i64,
                    })
                }
            }
        }
        Ok(acc * self.x[j] / (from[j] + 1) as f64)
    }

    /// Lattice terms of shell `degree` (lexicographic order), given the
    /// previous shell.
    fn next_shell(
        &self,
        prev: &BTreeMap<Vec<u32>, Complex>,
        degree: u32,
    ) -> Result<BTreeMap<Vec<u32>, Complex>> {
        let zero = Complex::new(0.0, 0.0);
        let mut out = BTreeMap::new();
        for n in compositions(degree, self.spec.variables) {
            let mut term = None;
            let mut from = n.clone();
            for j in 0..n.len() {
                if n[j] == 0 {
                    continue;
                }
                from[j] -= 1;
                let p = prev.get(&from).copied().unwrap_or(zero);
                if p != zero {
                    term = Some(self.step(p, &from, j)?);
                    from[j] += 1;
                    break;
                }
                from[j] += 1;
            }
            let term = match term {
                Some(t) => t,
                None => self.direct(&n)?,
            };
            out.insert(n, ensure_finite(term, "horn series term")?);
        }
        Ok(out)
    }
}

/// All `n ∈ ℕ^r` with `|n| = degree`, in lexicographic order.
fn compositions(degree: u32, r: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=rest {
            cur.push(k);
            rec(rest - k, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(degree, r, &mut Vec::with_capacity(r), &mut out);
    out
}

fn check_inputs(spec: &HornSeriesSpec, x: &[f64]) -> Result<()> {
    if !validate_spec(spec).is_valid() {
        return Err(Error::InvalidSpec("spec fails validation"));
    }
    if x.len() != spec.variables {
        return Err(Error::InvalidSpec("argument count differs from variable count"));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            context: "horn argument",
        });
    }
    Ok(())
}

fn origin(r: usize) -> BTreeMap<Vec<u32>, Complex> {
    let mut m = BTreeMap::new();
    m.insert(vec![0; r], Complex::new(1.0, 0.0));
    m
}

/// Sums a validated Horn series by degree shells.
///
/// Stops when three consecutive shell sums are each below `tol·|sum|`.
/// `terms_used` counts lattice points visited.
pub fn evaluate_horn(spec: &HornSeriesSpec, x: &[f64], tol: f64, max_terms: usize) -> Result<SeriesValue> {
    check_inputs(spec, x)?;
    let spec = spec.canonical();
    let terminating = spec.termination_degree().is_some();
    if !terminating && x.iter().any(|v| v.abs() >= 1.0) {
        return Err(Error::Domain(
            "horn arguments must satisfy |x_i| < 1 unless the series terminates",
        ));
    }
    let engine = Engine { spec: &spec, x };
    let mut shell = origin(spec.variables);
    let mut run = Truncation::new(tol);
    let mut points = 1usize;
    run.push(Complex::new(1.0, 0.0))?;
    let mut degree = 0u32;
    loop {
        degree += 1;
        shell = engine.next_shell(&shell, degree)?;
        points += shell.len();
        let s: Complex = shell.values().copied().sum();
        let done = run.push(s)?;
        if done {
            let mut v = run.finish(true);
            v.terms_used = points;
            return Ok(v);
        }
        if points >= max_terms {
            return Err(run.not_converged());
        }
    }
}

/// [`evaluate_horn`] with the default term budget.
pub fn evaluate_horn_default(spec: &HornSeriesSpec, x: &[f64], tol: f64) -> Result<SeriesValue> {
    evaluate_horn(spec, x, tol, DEFAULT_MAX_TERMS)
}

/// Exact sum of the lattice terms with total degree `degree`.
pub fn shell_terms(spec: &HornSeriesSpec, x: &[f64], degree: u32) -> Result<Complex> {
    check_inputs(spec, x)?;
    let spec = spec.canonical();
    let engine = Engine { spec: &spec, x };
    let mut shell = origin(spec.variables);
    for d in 1..=degree {
        shell = engine.next_shell(&shell, d)?;
    }
    Ok(shell.values().copied().sum())
}
