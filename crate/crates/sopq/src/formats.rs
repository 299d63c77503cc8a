//! On-disk formats: Horn series specs, β matrices and coefficient tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sopq_core::dist::{PointwiseMatrix, TransformTable};
use sopq_core::horn::{HornParam, HornSeriesSpec};
use sopq_core::Complex;

/// One parameter of a Horn spec file. `im` may be omitted for real values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamEntry {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    pub row: Vec<i32>,
}

/// JSON document describing a Horn series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HornSpecFile {
    pub variables: usize,
    pub numerator: Vec<ParamEntry>,
    pub denominator: Vec<ParamEntry>,
}

impl From<&HornParam> for ParamEntry {
    fn from(p: &HornParam) -> Self {
        ParamEntry {
            re: p.value.re,
            im: p.value.im,
            row: p.row.clone(),
        }
    }
}

impl From<&ParamEntry> for HornParam {
    fn from(p: &ParamEntry) -> Self {
        HornParam {
            value: Complex::new(p.re, p.im),
            row: p.row.clone(),
        }
    }
}

impl From<&HornSeriesSpec> for HornSpecFile {
    fn from(spec: &HornSeriesSpec) -> Self {
        HornSpecFile {
            variables: spec.variables,
            numerator: spec.numerator.iter().map(ParamEntry::from).collect(),
            denominator: spec.denominator.iter().map(ParamEntry::from).collect(),
        }
    }
}

impl From<&HornSpecFile> for HornSeriesSpec {
    fn from(file: &HornSpecFile) -> Self {
        HornSeriesSpec::new(
            file.variables,
            file.numerator.iter().map(HornParam::from).collect(),
            file.denominator.iter().map(HornParam::from).collect(),
        )
    }
}

/// β given either as a bare array of rows or as `{"beta": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BetaFile {
    Rows(Vec<Vec<f64>>),
    Wrapped { beta: Vec<Vec<f64>> },
}

impl BetaFile {
    pub fn rows(&self) -> &[Vec<f64>] {
        match self {
            BetaFile::Rows(r) => r,
            BetaFile::Wrapped { beta } => beta,
        }
    }

    pub fn to_matrix(&self) -> sopq_core::Result<PointwiseMatrix> {
        PointwiseMatrix::from_rows(self.rows())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistTerm {
    pub p: Vec<u32>,
    pub coeff: f64,
}

/// Coefficient table as written by `sopq dist`; terms in lexicographic
/// order of `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistOutput {
    pub det_beta: f64,
    pub terms: Vec<DistTerm>,
}

impl From<&TransformTable> for DistOutput {
    fn from(t: &TransformTable) -> Self {
        DistOutput {
            det_beta: t.det_beta,
            terms: t
                .terms
                .iter()
                .map(|(p, c)| DistTerm {
                    p: p.clone(),
                    coeff: *c,
                })
                .collect(),
        }
    }
}

impl DistOutput {
    pub fn as_map(&self) -> BTreeMap<Vec<u32>, f64> {
        self.terms.iter().map(|t| (t.p.clone(), t.coeff)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        let spec = HornSeriesSpec::gauss_2f1(Complex::new(0.5, -0.25), Complex::new(1.0, 0.0), Complex::new(2.5, 0.0));
        let text = serde_json::to_string(&HornSpecFile::from(&spec)).unwrap();
        let back: HornSpecFile = serde_json::from_str(&text).unwrap();
        assert_eq!(HornSeriesSpec::from(&back), spec);
    }

    #[test]
    fn imaginary_part_defaults_to_zero() {
        let f: HornSpecFile =
            serde_json::from_str(r#"{"variables":1,"numerator":[{"re":1,"row":[1]}],"denominator":[]}"#).unwrap();
        assert_eq!(f.numerator[0].im, 0.0);
    }

    #[test]
    fn both_beta_layouts_parse() {
        let a: BetaFile = serde_json::from_str("[[1,2],[3,4]]").unwrap();
        let b: BetaFile = serde_json::from_str(r#"{"beta": [[1,2],[3,4]]}"#).unwrap();
        assert_eq!(a.rows(), b.rows());
        assert_eq!(a.to_matrix().unwrap().det().unwrap(), -2.0);
    }
}
