//! JSON file formats for states, canonical forms and conjugation parameters.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matops::{complex_vec, CMatrix, CVector, C64};
use crate::states::families::Generated;
use crate::states::{CanonicalForm, DensityMatrix, RankTwoState};
use crate::symmetries::CartanParams;

const CONSISTENCY_TOL: f64 = 1e-8;

/// `{"n_a", "n_b", "matrix"}` and/or `{"rank_two": {...}}`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_a: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_b: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<CMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_two: Option<RankTwoRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankTwoRecord {
    pub lambda: f64,
    #[serde(with = "complex_vec")]
    pub psi1: CVector,
    #[serde(with = "complex_vec")]
    pub psi2: CVector,
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        Self {
            n_a: Some(rho.n_a()),
            n_b: Some(rho.n_b()),
            matrix: Some(rho.matrix().clone()),
            rank_two: None,
        }
    }

    /// Both representations.
    pub fn from_rank_two(s: &RankTwoState) -> Self {
        let mut file = Self::from_density(&s.density());
        file.rank_two = Some(RankTwoRecord {
            lambda: s.lambda(),
            psi1: s.psi1().clone(),
            psi2: s.psi2().clone(),
        });
        file
    }

    pub fn from_generated(g: &Generated) -> Self {
        match &g.rank_two {
            Some(s) => Self::from_rank_two(s),
            None => Self::from_density(&g.density),
        }
    }

    /// Validates the contents; when both representations are present they
    /// must describe the same matrix.
    pub fn to_state(&self) -> Result<Generated> {
        let rank_two = self
            .rank_two
            .as_ref()
            .map(|r| RankTwoState::new(r.lambda, r.psi1.clone(), r.psi2.clone()))
            .transpose()?;
        let density = match (&self.matrix, &rank_two) {
            (Some(m), _) => {
                let dim = m.rows();
                let (n_a, n_b) = match (self.n_a, self.n_b) {
                    (Some(a), Some(b)) => (a, b),
                    (None, None) if dim % 2 == 0 => (2, dim / 2),
                    _ => {
                        return Err(Error::InvalidInput(
                            "state file needs both n_a and n_b".into(),
                        ))
                    }
                };
                DensityMatrix::new(n_a, n_b, m.clone())?
            }
            (None, Some(s)) => {
                let rho = s.density();
                if let (Some(a), Some(b)) = (self.n_a, self.n_b) {
                    if (a, b) != (rho.n_a(), rho.n_b()) {
                        return Err(Error::dims(
                            format!("{}x{}", rho.n_a(), rho.n_b()),
                            format!("{a}x{b}"),
                        ));
                    }
                }
                rho
            }
            (None, None) => {
                return Err(Error::InvalidInput(
                    "state file has neither \"matrix\" nor \"rank_two\"".into(),
                ))
            }
        };
        if let Some(s) = &rank_two {
            let residual = s.matrix().max_abs_diff(density.matrix());
            if s.dims() != (density.n_a(), density.n_b()) || residual > CONSISTENCY_TOL {
                return Err(Error::InvalidInput(format!(
                    "\"matrix\" and \"rank_two\" disagree (residual {residual:e})"
                )));
            }
        }
        Ok(Generated { density, rank_two })
    }
}

/// JSON record of a canonical form with its round-trip residual.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CanonicalRecord {
    pub lambda: f64,
    pub q1: f64,
    pub q6: f64,
    #[serde(with = "complex_vec")]
    pub p: CVector,
    pub x1: CMatrix,
    pub x2: CMatrix,
    pub swapped: bool,
    pub residual: f64,
}

impl CanonicalRecord {
    pub fn new(cf: &CanonicalForm, original: &RankTwoState) -> Self {
        Self {
            lambda: cf.lambda,
            q1: cf.q1,
            q6: cf.q6,
            p: CVector::from_column_slice(&cf.p),
            x1: cf.x1.clone(),
            x2: cf.x2.clone(),
            swapped: cf.swapped,
            residual: cf.residual(original),
        }
    }

    pub fn to_canonical(&self) -> Result<CanonicalForm> {
        if self.p.len() != 8 {
            return Err(Error::dims(8, self.p.len()));
        }
        let mut p = [C64::from(0.0); 8];
        p.copy_from_slice(self.p.as_slice());
        let mut cf = CanonicalForm::from_parts(self.lambda, self.q1, self.q6, p)?;
        cf.x1 = self.x1.clone();
        cf.x2 = self.x2.clone();
        cf.swapped = self.swapped;
        Ok(cf)
    }
}

pub fn parse_state(text: &str) -> Result<Generated> {
    serde_json::from_str::<StateFile>(text)?.to_state()
}

pub fn read_state(path: &Path) -> Result<Generated> {
    parse_state(&read(path)?)
}

/// Parses and validates `{"A", "b", "t"}`.
pub fn parse_params(text: &str) -> Result<CartanParams> {
    serde_json::from_str::<CartanParams>(text)?.validated()
}

pub fn read_params(path: &Path) -> Result<CartanParams> {
    parse_params(&read(path)?)
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}
