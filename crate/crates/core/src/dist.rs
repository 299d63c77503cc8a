//! Derivatives of delta distributions under a change of defining equations.
//!
//! A surface is cut out by `Q_1 = … = Q_k = 0` and equally by
//! `P_1 = … = P_k = 0`, where `P_i = Σ_j Q_j β_ji` with `β` non-singular.
//! The `Q`-side derivative of order `q = (q_1, …, q_k)` becomes a combination
//! of `P`-side derivatives of the same total order:
//!
//! `δ^{(q)}(Q) = det β · Σ_R Π_i q_i! Π_ij β_ij^{r_ij} / r_ij! · δ^{(colsum R)}(P)`
//!
//! with `R` running over non-negative integer matrices whose row sums are
//! `q` ("packings"). Grouping the raw `k^s`-term contraction by the multiset
//! of `P` indices yields the same coefficients; the `Π q_i! / Π r_ij!`
//! factor counts the index tuples that collapse onto one packing.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::special::ln_factorial;
use crate::{Error, Result};

/// Default cap on enumerated packings or index tuples.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Multi-index `(q_1, …, q_k)` of derivative orders.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::Domain("multi-index needs at least one component"));
        }
        Ok(MultiIndex(orders))
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> u64 {
        self.0.iter().map(|v| *v as u64).sum()
    }

    /// Index list with `i` repeated `q_i` times, in increasing order.
    pub fn to_index_list(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, q) in self.0.iter().enumerate() {
            out.extend(core::iter::repeat_n(i, *q as usize));
        }
        out
    }
}

/// `k × k` non-negative integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PackingMatrix {
    pub k: usize,
    pub entries: Vec<u32>,
}

impl PackingMatrix {
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.k + j]
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.chunks(self.k).map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        let mut out = vec![0; self.k];
        for row in self.entries.chunks(self.k) {
            for (o, v) in out.iter_mut().zip(row) {
                *o += v;
            }
        }
        out
    }
}

/// Real `k × k` matrix sampled at one point, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseMatrix {
    pub k: usize,
    pub values: Vec<f64>,
}

impl PointwiseMatrix {
    pub fn new(k: usize, values: Vec<f64>) -> Result<Self> {
        if k == 0 || values.len() != k * k {
            return Err(Error::Domain("matrix needs k >= 1 and k² entries"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite"));
        }
        Ok(PointwiseMatrix { k, values })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::Domain("matrix must be square"));
        }
        PointwiseMatrix::new(k, rows.concat())
    }

    pub fn identity(k: usize) -> Self {
        let mut values = vec![0.0; k * k];
        for i in 0..k {
            values[i * k + i] = 1.0;
        }
        PointwiseMatrix { k, values }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.k + j]
    }

    pub fn mul(&self, other: &PointwiseMatrix) -> Result<PointwiseMatrix> {
        if self.k != other.k {
            return Err(Error::Domain("matrix sizes differ"));
        }
        let k = self.k;
        let mut values = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                values[i * k + j] = (0..k).map(|l| self.get(i, l) * other.get(l, j)).sum();
            }
        }
        Ok(PointwiseMatrix { k, values })
    }

    /// LU factorization with partial pivoting: `(lu, perm, sign)`.
    fn lu(&self) -> Result<(Vec<f64>, Vec<usize>, f64)> {
        let k = self.k;
        let mut a = self.values.clone();
        let mut perm: Vec<usize> = (0..k).collect();
        let mut sign = 1.0;
        let scale = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale == 0.0 {
            return Err(Error::SingularMatrix);
        }
        for col in 0..k {
            let piv = (col..k)
                .max_by(|&i, &j| a[i * k + col].abs().total_cmp(&a[j * k + col].abs()))
                .unwrap_or(col);
            if a[piv * k + col].abs() <= 1e-14 * scale {
                return Err(Error::SingularMatrix);
            }
            if piv != col {
                for j in 0..k {
                    a.swap(piv * k + j, col * k + j);
                }
                perm.swap(piv, col);
                sign = -sign;
            }
            for i in col + 1..k {
                let f = a[i * k + col] / a[col * k + col];
                a[i * k + col] = f;
                for j in col + 1..k {
                    a[i * k + j] -= f * a[col * k + j];
                }
            }
        }
        Ok((a, perm, sign))
    }

    /// Determinant; numerically singular matrices are an error.
    pub fn det(&self) -> Result<f64> {
        let (lu, _, sign) = self.lu()?;
        Ok((0..self.k).map(|i| lu[i * self.k + i]).product::<f64>() * sign)
    }

    pub fn inverse(&self) -> Result<PointwiseMatrix> {
        let k = self.k;
        let (lu, perm, _) = self.lu()?;
        let mut inv = vec![0.0; k * k];
        for col in 0..k {
            let mut x: Vec<f64> = (0..k).map(|i| if perm[i] == col { 1.0 } else { 0.0 }).collect();
            for i in 0..k {
                for j in 0..i {
                    x[i] -= lu[i * k + j] * x[j];
                }
            }
            for i in (0..k).rev() {
                for j in i + 1..k {
                    x[i] -= lu[i * k + j] * x[j];
                }
                x[i] /= lu[i * k + i];
            }
            for i in 0..k {
                inv[i * k + col] = x[i];
            }
        }
        Ok(PointwiseMatrix { k, values: inv })
    }
}

fn binomial(n: u64, r: u64) -> f64 {
    libm::exp(ln_factorial(n) - ln_factorial(r) - ln_factorial(n - r))
}

fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// All packings with row sums `q`, in lexicographic order of their
/// row-major entries. Fails with `BudgetExceeded` if there would be more
/// than `budget` of them.
pub fn enumerate_packings(q: &MultiIndex, budget: usize) -> Result<Vec<PackingMatrix>> {
    let k = q.k();
    let count: f64 = q.0.iter().map(|qi| binomial(*qi as u64 + k as u64 - 1, k as u64 - 1)).product();
    if count > budget as f64 {
        return Err(Error::BudgetExceeded { limit: budget });
    }
    let rows: Vec<Vec<Vec<u32>>> = q
        .0
        .iter()
        .map(|qi| {
            let mut out = Vec::new();
            compositions(*qi, k, &mut Vec::new(), &mut out);
            out.reverse();
            out
        })
        .collect();
    let mut result = Vec::with_capacity(count as usize);
    let mut choice = vec![0usize; k];
    loop {
        let entries: Vec<u32> = choice.iter().enumerate().flat_map(|(i, c)| rows[i][*c].iter().copied()).collect();
        result.push(PackingMatrix { k, entries });
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(result);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < rows[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// `det β` and the coefficients of `δ^{(p)}(P)`, keyed by `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformTable {
    pub det_beta: f64,
    pub terms: BTreeMap<Vec<u32>, f64>,
}

fn check_sizes(beta: &PointwiseMatrix, q: &MultiIndex) -> Result<()> {
    if beta.k != q.k() {
        return Err(Error::Domain("matrix size and multi-index length differ"));
    }
    Ok(())
}

/// Coefficients of `δ^{(q)}(Q)` in terms of `δ^{(p)}(P)` by summing over
/// packings.
pub fn transform_coefficients(beta: &PointwiseMatrix, q: &MultiIndex) -> Result<TransformTable> {
    transform_coefficients_budget(beta, q, DEFAULT_BUDGET)
}

pub fn transform_coefficients_budget(
    beta: &PointwiseMatrix,
    q: &MultiIndex,
    budget: usize,
) -> Result<TransformTable> {
    check_sizes(beta, q)?;
    let det = beta.det()?;
    let k = beta.k;
    let ln_qfact: f64 = q.0.iter().map(|v| ln_factorial(*v as u64)).sum();
    let mut terms = BTreeMap::new();
    for pack in enumerate_packings(q, budget)? {
        let mut w = libm::exp(ln_qfact);
        for i in 0..k {
            for j in 0..k {
                let r = pack.get(i, j);
                if r > 0 {
                    w *= libm::pow(beta.get(i, j), r as f64) / libm::exp(ln_factorial(r as u64));
                }
            }
        }
        *terms.entry(pack.col_sums()).or_insert(0.0) += det * w;
    }
    Ok(TransformTable { det_beta: det, terms })
}

/// Raw contraction `det β · β_{i_1 j_1} ⋯ β_{i_s j_s}` for every tuple
/// `(j_1, …, j_s)`, keyed by the tuple.
pub fn transform_index_form(beta: &PointwiseMatrix, indices: &[usize]) -> Result<BTreeMap<Vec<usize>, f64>> {
    let k = beta.k;
    if indices.iter().any(|i| *i >= k) {
        return Err(Error::Domain("index out of range"));
    }
    let total = libm::pow(k as f64, indices.len() as f64);
    if total > DEFAULT_BUDGET as f64 {
        return Err(Error::BudgetExceeded { limit: DEFAULT_BUDGET });
    }
    let det = beta.det()?;
    let s = indices.len();
    let mut out = BTreeMap::new();
    let mut tuple = vec![0usize; s];
    loop {
        let v = indices.iter().zip(&tuple).fold(det, |acc, (i, j)| acc * beta.get(*i, *j));
        out.insert(tuple.clone(), v);
        let mut t = s;
        loop {
            if t == 0 {
                return Ok(out);
            }
            t -= 1;
            tuple[t] += 1;
            if tuple[t] < k {
                break;
            }
            tuple[t] = 0;
        }
    }
}

/// Groups a raw contraction by the multiset of its `P` indices, giving
/// coefficients keyed by order vectors `p` of length `k`.
pub fn group_index_form(raw: &BTreeMap<Vec<usize>, f64>, k: usize) -> BTreeMap<Vec<u32>, f64> {
    let mut out = BTreeMap::new();
    for (tuple, v) in raw {
        let mut p = vec![0u32; k];
        for j in tuple {
            p[*j] += 1;
        }
        *out.entry(p).or_insert(0.0) += *v;
    }
    out
}

/// Applies the transform for `beta1` and then, to every resulting term, the
/// transform for `beta2`. The result equals the single transform for the
/// matrix product `beta1 · beta2`.
pub fn compose_transforms(
    beta1: &PointwiseMatrix,
    beta2: &PointwiseMatrix,
    q: &MultiIndex,
) -> Result<BTreeMap<Vec<u32>, f64>> {
    let first = transform_coefficients(beta1, q)?;
    let mut out = BTreeMap::new();
    for (p, c1) in &first.terms {
        let second = transform_coefficients(beta2, &MultiIndex(p.clone()))?;
        for (p2, c2) in second.terms {
            *out.entry(p2).or_insert(0.0) += c1 * c2;
        }
    }
    Ok(out)
}

/// `β` at a point together with its derivative along one coordinate and
/// samples at `x ± h` along the same coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixJet {
    pub value: PointwiseMatrix,
    pub derivative: PointwiseMatrix,
    pub plus: PointwiseMatrix,
    pub minus: PointwiseMatrix,
    pub h: f64,
}

/// `|∂ det β - Σ_ij β_ij,μ α_ji det β|`, with the left side from a central
/// difference of the sampled determinants. `alpha` must invert `β`.
pub fn jacobi_formula_check(jet: &MatrixJet, alpha: &PointwiseMatrix) -> Result<f64> {
    let beta = &jet.value;
    let k = beta.k;
    if !(jet.h > 0.0) || [&jet.derivative, &jet.plus, &jet.minus, alpha].iter().any(|m| m.k != k) {
        return Err(Error::Domain("inconsistent jet"));
    }
    let prod = beta.mul(alpha)?;
    let residual = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| (prod.get(i, j) - if i == j { 1.0 } else { 0.0 }).abs())
        .fold(0.0f64, f64::max);
    if residual > 1e-10 {
        return Err(Error::InconsistentInverse { residual });
    }
    let det = beta.det()?;
    let numeric = (jet.plus.det()? - jet.minus.det()?) / (2.0 * jet.h);
    let mut formula = 0.0;
    for i in 0..k {
        for j in 0..k {
            formula += jet.derivative.get(i, j) * alpha.get(j, i);
        }
    }
    Ok((numeric - formula * det).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packings_of_small_orders() {
        let p = enumerate_packings(&MultiIndex(vec![2, 1]), DEFAULT_BUDGET).unwrap();
        assert_eq!(p.len(), 3 * 2);
        assert!(p.windows(2).all(|w| w[0].entries < w[1].entries));
        assert!(p.iter().all(|m| m.row_sums() == vec![2, 1]));
        assert!(matches!(
            enumerate_packings(&MultiIndex(vec![30; 4]), 1000),
            Err(Error::BudgetExceeded { limit: 1000 })
        ));
    }

    #[test]
    fn one_dimensional_scaling() {
        let c = 2.5;
        let beta = PointwiseMatrix::new(1, vec![1.0 / c]).unwrap();
        for m in 0..=5u32 {
            let t = transform_coefficients(&beta, &MultiIndex(vec![m])).unwrap();
            let v = t.terms[&vec![m]];
            assert!((v - libm::pow(c, -(m as f64) - 1.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn singular_and_inverse() {
        let b = PointwiseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(b.det(), Err(Error::SingularMatrix)));
        let b = PointwiseMatrix::from_rows(&[vec![0.0, 2.0], vec![1.0, 3.0]]).unwrap();
        assert!((b.det().unwrap() + 2.0).abs() < 1e-15);
        let prod = b.mul(&b.inverse().unwrap()).unwrap();
        assert!(prod.values.iter().zip(PointwiseMatrix::identity(2).values).all(|(a, e)| (a - e).abs() < 1e-15));
    }

    #[test]
    fn inconsistent_inverse_is_rejected() {
        let b = PointwiseMatrix::identity(2);
        let jet = MatrixJet {
            value: b.clone(),
            derivative: b.clone(),
            plus: b.clone(),
            minus: b.clone(),
            h: 1e-5,
        };
        let wrong = PointwiseMatrix::new(2, vec![2.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(jacobi_formula_check(&jet, &wrong), Err(Error::InconsistentInverse { .. })));
    }
}
