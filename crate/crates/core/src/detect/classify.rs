//! Classification of 2x4 rank-2 states with vanishing concurrences into the
//! separable (ZCS) and entangled (ZCE) classes.

use serde::Serialize;

use super::ppt::ppt_test;
use super::search::{max_concurrence_search_with, SearchConfig};
use crate::error::Result;
use crate::matops::C64;
use crate::states::{canonicalize, CanonicalForm, Canonicalized, RankTwoState};
use crate::symmetries::CartanParams;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZcClass {
    /// Separable with every concurrence zero.
    ZcsSeparable,
    /// Entangled with every concurrence zero.
    ZceEntangled,
    /// Some concurrence of the family is nonzero.
    NotZc,
}

#[derive(Clone, Debug)]
pub enum Certificate {
    PptPass { min_eig: f64 },
    PptViolation { min_eig: f64 },
    Witness { value: f64, params: CartanParams },
    /// Pattern checks failed and the search found no concurrence above
    /// the witness threshold.
    NoWitness { best: f64 },
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub class: ZcClass,
    pub certificate: Certificate,
    pub canonical: Option<CanonicalForm>,
    pub ppt_min_eig: f64,
}

/// `lambda = 1/2`, `w1 = w3 = 0`, `p7 = 0`, `|p3| = q1` and `|p8| = q6`.
pub fn matches_zce_pattern(cf: &CanonicalForm) -> bool {
    let tol = tol::PATTERN;
    let small = |k: usize| cf.p(k).norm() <= tol;
    (cf.lambda - 0.5).abs() <= tol
        && [1, 2, 5, 6, 7].into_iter().all(small)
        && (cf.p(3).norm() - cf.q1).abs() <= tol
        && (cf.p(8).norm() - cf.q6).abs() <= tol
}

/// Structural part of the separable class: `w2 = w4 = 0`,
/// `|w1^T J2 w3| = lambda / (1 - lambda) q1 q6` and
/// `conj(p1 p6 - p2 p5) (q1 p6 + q6 p1)^2` real and non-positive.
pub fn matches_zcs_pattern(cf: &CanonicalForm) -> bool {
    let tol = tol::PATTERN;
    if ![3, 4, 7, 8].into_iter().all(|k| cf.p(k).norm() <= tol) {
        return false;
    }
    let (p1, p2, p5, p6) = (cf.p(1), cf.p(2), cf.p(5), cf.p(6));
    let sympl = p1 * p6 - p2 * p5;
    let target = cf.lambda / (1.0 - cf.lambda) * cf.q1 * cf.q6;
    if (sympl.norm() - target).abs() > tol {
        return false;
    }
    let mix = C64::from(cf.q1) * p6 + C64::from(cf.q6) * p1;
    let z = sympl.conj() * mix * mix;
    z.re <= tol && z.im.abs() <= tol
}

/// `|| w4 w1^T - w2 w3^T ||_max`, zero on both zero-concurrence classes.
pub fn outer_product_defect(cf: &CanonicalForm) -> f64 {
    let (w1, w2, w3, w4) = (cf.w(1), cf.w(2), cf.w(3), cf.w(4));
    let mut max: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            max = max.max((w4[i] * w1[j] - w2[i] * w3[j]).norm());
        }
    }
    max
}

/// Classifies by the structural patterns; only states matching neither are
/// searched for a witness conjugation.
pub fn classify_zero_concurrence(s: &RankTwoState, search: &SearchConfig) -> Result<Classification> {
    let (is_ppt, min_eig) = ppt_test(&s.density())?;
    let cf = match canonicalize(s)? {
        Canonicalized::BothSeparable => {
            return Ok(Classification {
                class: ZcClass::ZcsSeparable,
                certificate: Certificate::PptPass { min_eig },
                canonical: None,
                ppt_min_eig: min_eig,
            })
        }
        Canonicalized::Canonical(cf) => cf,
    };

    if matches_zce_pattern(&cf) {
        return Ok(Classification {
            class: ZcClass::ZceEntangled,
            certificate: Certificate::PptViolation { min_eig },
            canonical: Some(cf),
            ppt_min_eig: min_eig,
        });
    }
    if is_ppt && matches_zcs_pattern(&cf) {
        return Ok(Classification {
            class: ZcClass::ZcsSeparable,
            certificate: Certificate::PptPass { min_eig },
            canonical: Some(cf),
            ppt_min_eig: min_eig,
        });
    }

    let found = max_concurrence_search_with(s, search)?;
    let certificate = if found.value > tol::WITNESS {
        Certificate::Witness {
            value: found.value,
            params: found.params,
        }
    } else {
        log::warn!(
            "no zero-concurrence pattern matched and the search (seed {:#x}, {} restarts) found no witness: best {:e}",
            search.seed,
            search.restarts,
            found.value
        );
        Certificate::NoWitness { best: found.value }
    };
    Ok(Classification {
        class: ZcClass::NotZc,
        certificate,
        canonical: Some(cf),
        ppt_min_eig: min_eig,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matops::{basis, ZERO};
    use crate::rng;
    use crate::states::{make_zce, random_local_unitaries, random_rank_two};

    fn quick() -> SearchConfig {
        SearchConfig {
            restarts: 4,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn zce_is_recognized() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = classify_zero_concurrence(&make_zce(h, 0.0).unwrap(), &quick()).unwrap();
        assert_eq!(c.class, ZcClass::ZceEntangled);
        assert!(c.ppt_min_eig < -1e-4);
        assert!(outer_product_defect(c.canonical.as_ref().unwrap()) < 1e-8);

        let (x1, x2) = random_local_unitaries(&mut rng::seeded(4));
        let rotated = make_zce(0.3, 2.0).unwrap().local_transform(&x1, &x2).unwrap();
        let c = classify_zero_concurrence(&rotated, &quick()).unwrap();
        assert_eq!(c.class, ZcClass::ZceEntangled);
    }

    #[test]
    fn product_eigenvectors_are_separable() {
        let s = RankTwoState::new(0.3, basis(8, 0), basis(8, 7)).unwrap();
        let c = classify_zero_concurrence(&s, &quick()).unwrap();
        assert_eq!(c.class, ZcClass::ZcsSeparable);
        assert!(c.canonical.is_none());
    }

    #[test]
    fn separable_pattern_with_entangled_eigenvectors() {
        let psi1 = basis(8, 0) * C64::from(0.6) + basis(8, 5) * C64::from(0.8);
        let psi2 = basis(8, 0) * C64::from(0.8) - basis(8, 5) * C64::from(0.6);
        let s = RankTwoState::new(0.5, psi1.clone(), psi2.clone()).unwrap();
        let c = classify_zero_concurrence(&s, &quick()).unwrap();
        assert_eq!(c.class, ZcClass::ZcsSeparable);
        assert!(matches!(c.certificate, Certificate::PptPass { .. }));
        assert!(outer_product_defect(c.canonical.as_ref().unwrap()) < 1e-8);

        let s = RankTwoState::new(0.6, psi1, psi2).unwrap();
        let c = classify_zero_concurrence(&s, &quick()).unwrap();
        assert_eq!(c.class, ZcClass::NotZc);
        assert!(matches!(c.certificate, Certificate::Witness { .. }));
    }

    #[test]
    fn generic_states_get_witness() {
        let mut r = rng::seeded(12);
        for _ in 0..5 {
            let c = classify_zero_concurrence(&random_rank_two(&mut r), &quick()).unwrap();
            assert_eq!(c.class, ZcClass::NotZc);
            assert!(matches!(c.certificate, Certificate::Witness { value, .. } if value > 1e-6));
        }
    }

    #[test]
    fn zcs_pattern_predicate() {
        let q1 = 0.6;
        let q6 = 0.8;
        let lambda = 0.5;
        // p1 q1 + p6 q6 = 0 with p1 = q6 r, p6 = -q1 r and |p1 p6| = q1 q6
        let mut p = [ZERO; 8];
        p[0] = C64::from(q6);
        p[5] = C64::from(-q1);
        let cf = CanonicalForm::from_parts(lambda, q1, q6, p).unwrap();
        assert!(matches_zcs_pattern(&cf));
        assert!(!matches_zce_pattern(&cf));
        let cf = CanonicalForm::from_parts(0.4, q1, q6, p).unwrap();
        assert!(!matches_zcs_pattern(&cf));
    }
}
