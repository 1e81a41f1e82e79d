//! `alpha`, `beta`, `gamma` of a canonical 2x4 state evaluated directly from
//! `(A, b, t)`, without building the 8x8 conjugation matrix.

use super::concurrence::ReducedConcurrenceData;
use crate::error::Result;
use crate::matops::{inner, CMatrix, C64};
use crate::states::CanonicalForm;
use crate::symmetries::{apply_conjugation, conjugation_from_params, CartanParams};

/// Entries below this count as exactly zero when choosing the `beta` formula.
const FORM_TOL: f64 = 1e-12;

/// Which closed form applies to `beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaForm {
    /// `w2 = w4 = 0`.
    SeparableForm,
    /// `w1 = w3 = 0`.
    EntangledForm,
    Generic,
}

pub fn beta_form(cf: &CanonicalForm) -> BetaForm {
    let vanishes = |j: usize| cf.w(j).iter().all(|z| z.norm() <= FORM_TOL);
    if vanishes(2) && vanishes(4) {
        BetaForm::SeparableForm
    } else if vanishes(1) && vanishes(3) {
        BetaForm::EntangledForm
    } else {
        BetaForm::Generic
    }
}

type V2 = [C64; 2];

fn conj2(v: V2) -> V2 {
    [v[0].conj(), v[1].conj()]
}

/// `x^T J2 y`.
fn sympl(x: V2, y: V2) -> C64 {
    x[0] * y[1] - x[1] * y[0]
}

/// `x^T K y`.
fn bilinear(x: V2, k: &CMatrix, y: V2) -> C64 {
    let ky = [k[(0, 0)] * y[0] + k[(0, 1)] * y[1], k[(1, 0)] * y[0] + k[(1, 1)] * y[1]];
    x[0] * ky[0] + x[1] * ky[1]
}

/// Closed-form `(alpha, beta, gamma)` for a canonical state and the
/// conjugation generated by `p`. `beta` uses the separable- or
/// entangled-form expression when the state has that shape, and the direct
/// inner product otherwise.
pub fn closed_form_abg(cf: &CanonicalForm, p: &CartanParams) -> Result<ReducedConcurrenceData> {
    cf.check_invariants()?;
    let (_, s) = p.trig();
    let b = p.b();
    let k = p.rotation_block();
    let phase = p.trace_phase();
    let (q1, q6) = (C64::from(cf.q1), C64::from(cf.q6));
    let w: Vec<V2> = (1..=4).map(|j| conj2(cf.w(j))).collect();
    let (w1, w2, w3, w4) = (w[0], w[1], w[2], w[3]);

    let alpha = b * q1 * q6 * (-4.0 * s);
    let gamma = (b.conj() * sympl(w2, w4) - b * sympl(w1, w3)) * (4.0 * s)
        + (bilinear(w1, &k, w4) - bilinear(w3, &k, w2)) * 2.0;

    let v1 = [q1, C64::from(0.0)];
    let v2 = [C64::from(0.0), q6];
    let beta = match beta_form(cf) {
        BetaForm::SeparableForm => b * (sympl(v2, w1) - sympl(v1, w3)) * (2.0 * s),
        BetaForm::EntangledForm => bilinear(v1, &k, w4) - bilinear(v2, &k, w2),
        BetaForm::Generic => {
            let m = conjugation_from_params(p);
            let psi1 = cf.psi1();
            return Ok(ReducedConcurrenceData::new(
                alpha * phase,
                inner(&psi1, &apply_conjugation(&m, &cf.psi2())?),
                gamma * phase,
                cf.lambda,
            ));
        }
    };
    Ok(ReducedConcurrenceData::new(
        alpha * phase,
        beta * phase,
        gamma * phase,
        cf.lambda,
    ))
}
