//! Entanglement detection: PPT and Sylvester checks, generalized
//! concurrences, the zero-concurrence classifier and the detection pipeline.

mod classify;
mod closed_form;
mod concurrence;
mod ppt;
mod search;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::DensityMatrix;
use crate::symmetries::CartanParams;
use crate::tol;

pub use classify::{
    classify_zero_concurrence, matches_zce_pattern, matches_zcs_pattern, outer_product_defect,
    Certificate, Classification, ZcClass,
};
pub use closed_form::{beta_form, closed_form_abg, BetaForm};
pub use concurrence::{
    equal_eigenvalue_conditions, mixed_concurrence_full, mixed_concurrence_reduced,
    pure_concurrence, wootters_concurrence, ReducedConcurrenceData, CONDITION_TOL, GAP_TOL,
};
pub use ppt::{ppt_test, psd_test_registry, sylvester_psd, PsdTest};
pub use search::{
    deterministic_start, max_concurrence_search, max_concurrence_search_with,
    optimizer_registry, ConcurrenceObjective, LocalOptimum, NelderMead, Optimizer, Point,
    RandomAscent, SearchConfig, SearchResult, PARAMS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictTag {
    SeparableCertified,
    EntangledByPPT,
    EntangledByConcurrence,
    ZCEUndetectedByConcurrence,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub enum Witness {
    /// A conjugation with nonzero concurrence; `params` is absent for the
    /// two-qubit spin flip.
    Concurrence {
        value: f64,
        params: Option<CartanParams>,
    },
    NegativeEigenvalue(f64),
}

#[derive(Clone, Debug)]
pub struct DetectionVerdict {
    pub tag: VerdictTag,
    pub ppt_min_eig: f64,
    /// Largest concurrence found, when one was computed.
    pub concurrence: Option<f64>,
    pub witness: Option<Witness>,
    pub class: Option<ZcClass>,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub zero: f64,
    pub witness: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            zero: tol::ZERO_CONCURRENCE,
            witness: tol::WITNESS,
        }
    }
}

/// Serialized form of a [`DetectionVerdict`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub tag: VerdictTag,
    pub ppt_min_eig: f64,
    pub concurrence: Option<f64>,
    pub witness_params: Option<CartanParams>,
    pub thresholds: Thresholds,
}

impl DetectionVerdict {
    fn new(tag: VerdictTag, ppt_min_eig: f64) -> Self {
        Self {
            tag,
            ppt_min_eig,
            concurrence: None,
            witness: None,
            class: None,
            notes: Vec::new(),
        }
    }

    pub fn report(&self) -> VerdictReport {
        let witness_params = match &self.witness {
            Some(Witness::Concurrence { params, .. }) => params.clone(),
            _ => None,
        };
        VerdictReport {
            tag: self.tag,
            ppt_min_eig: self.ppt_min_eig,
            concurrence: self.concurrence,
            witness_params,
            thresholds: Thresholds::default(),
        }
    }
}

/// Runs the PPT test and, for 2x4 rank-2 states, the zero-concurrence
/// classifier with a witness search. Two-qubit states are decided by the
/// spin-flip concurrence.
pub fn detect(rho: &DensityMatrix, search: &SearchConfig) -> Result<DetectionVerdict> {
    let (n_a, n_b) = (rho.n_a(), rho.n_b());
    if n_a != 2 || !(n_b == 2 || n_b == 4) {
        return Err(Error::UnsupportedShape { n_a, n_b });
    }
    let (is_ppt, min_eig) = ppt_test(rho)?;
    log::info!("PPT minimum eigenvalue {min_eig:e}");
    if n_b == 2 {
        return detect_two_qubit(rho, is_ppt, min_eig);
    }

    let rank = rho.rank()?;
    if is_ppt {
        // PPT is sufficient for separability of 2xN states of rank at most N
        let mut v = DetectionVerdict::new(
            if rank <= n_b {
                VerdictTag::SeparableCertified
            } else {
                VerdictTag::Inconclusive
            },
            min_eig,
        );
        v.notes.push(format!("PPT holds, rank {rank}"));
        return Ok(v);
    }

    let mut v = DetectionVerdict::new(VerdictTag::EntangledByPPT, min_eig);
    v.witness = Some(Witness::NegativeEigenvalue(min_eig));
    if rank != 2 {
        v.notes.push(format!("rank {rank}: no concurrence classification"));
        return Ok(v);
    }

    let s = rho.to_rank_two()?;
    let class = classify_zero_concurrence(&s, search)?;
    v.class = Some(class.class);
    match class.certificate {
        Certificate::Witness { value, params } => {
            v.tag = VerdictTag::EntangledByConcurrence;
            v.concurrence = Some(value);
            v.witness = Some(Witness::Concurrence {
                value,
                params: Some(params),
            });
        }
        Certificate::NoWitness { best } => {
            v.concurrence = Some(best);
            v.notes.push(format!(
                "no pattern matched and no witness found (seed {:#x})",
                search.seed
            ));
        }
        Certificate::PptViolation { .. } => {
            let found = max_concurrence_search_with(&s, search)?;
            v.tag = VerdictTag::ZCEUndetectedByConcurrence;
            v.concurrence = Some(found.value);
            if found.value > tol::ZERO_CONCURRENCE {
                log::warn!("zero-concurrence pattern but search found {:e}", found.value);
                v.notes.push(format!("search reached concurrence {:e}", found.value));
            }
        }
        Certificate::PptPass { .. } => {
            v.notes
                .push("separable pattern matched although PPT failed numerically".into());
        }
    }
    Ok(v)
}

fn detect_two_qubit(rho: &DensityMatrix, is_ppt: bool, min_eig: f64) -> Result<DetectionVerdict> {
    let c = wootters_concurrence(rho)?;
    let tag = if c <= tol::ZERO_CONCURRENCE {
        VerdictTag::SeparableCertified
    } else if c > tol::WITNESS {
        VerdictTag::EntangledByConcurrence
    } else if !is_ppt {
        VerdictTag::EntangledByPPT
    } else {
        VerdictTag::Inconclusive
    };
    let mut v = DetectionVerdict::new(tag, min_eig);
    v.concurrence = Some(c);
    if tag == VerdictTag::EntangledByConcurrence {
        v.witness = Some(Witness::Concurrence {
            value: c,
            params: None,
        });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matops::{basis, CMatrix, C64};
    use crate::rng;
    use crate::states::{make_separable, make_zce, random_rank_two};

    fn quick() -> SearchConfig {
        SearchConfig {
            restarts: 4,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn pipeline_examples() {
        let zce = make_zce(0.6, 0.4).unwrap().density();
        assert_eq!(detect(&zce, &quick()).unwrap().tag, VerdictTag::ZCEUndetectedByConcurrence);

        let sep = make_separable(&[
            (0.5, basis(2, 0), basis(4, 1)),
            (0.5, basis(2, 1), basis(4, 2)),
        ])
        .unwrap();
        assert_eq!(detect(&sep, &quick()).unwrap().tag, VerdictTag::SeparableCertified);

        let generic = random_rank_two(&mut rng::seeded(6)).density();
        let v = detect(&generic, &quick()).unwrap();
        assert_eq!(v.tag, VerdictTag::EntangledByConcurrence);
        assert!(v.ppt_min_eig < 0.0 && v.concurrence.unwrap() > 1e-6);
        assert!(v.report().witness_params.is_some());
    }

    #[test]
    fn two_qubit_and_shapes() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = (basis(4, 0) + basis(4, 3)) * C64::from(h);
        let v = detect(&DensityMatrix::pure(2, 2, &bell).unwrap(), &quick()).unwrap();
        assert_eq!(v.tag, VerdictTag::EntangledByConcurrence);
        let mixed = DensityMatrix::new(2, 2, CMatrix::identity(4).scale_real(0.25)).unwrap();
        assert_eq!(detect(&mixed, &quick()).unwrap().tag, VerdictTag::SeparableCertified);
        let big = DensityMatrix::new(2, 3, CMatrix::identity(6).scale_real(1.0 / 6.0)).unwrap();
        assert!(matches!(detect(&big, &quick()), Err(Error::UnsupportedShape { .. })));
    }

    #[test]
    fn report_layout() {
        let v = detect(&make_zce(0.6, 0.4).unwrap().density(), &quick()).unwrap();
        let text = serde_json::to_string(&v.report()).unwrap();
        let positions: Vec<usize> = ["tag", "ppt_min_eig", "concurrence", "witness_params", "thresholds"]
            .iter()
            .map(|k| text.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
        let json: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json["tag"], "ZCEUndetectedByConcurrence");
        assert_eq!(json["thresholds"]["zero"], 1e-8);
        assert_eq!(json["thresholds"]["witness"], 1e-6);
    }
}
