//! Local-unitary normal form of a 2x4 rank-2 state.
//!
//! After relabelling so that `psi1` is entangled, local bases are chosen so
//! that `psi1 = (q1, 0, 0, 0, 0, q6, 0, 0)` and `psi2 = (p1, ..., p8)` with
//! `p4 = 0`, `p1 >= 0`, `p6 <= 0` and `p1 q1 + p6 q6 = 0`. Splitting `psi2`
//! into consecutive pairs gives the vectors `w1 .. w4`.

use super::{schmidt_decompose, RankTwoState};
use crate::error::{Error, Result};
use crate::matops::{kron, CMatrix, CVector, C64, ONE, ZERO};
use crate::tol;

const INVARIANT_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Canonicalized {
    /// Both eigenvectors are product states, so the state is separable.
    BothSeparable,
    Canonical(CanonicalForm),
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// Weight of `psi1`.
    pub lambda: f64,
    pub q1: f64,
    pub q6: f64,
    /// Coefficients `p1 .. p8` of `psi2` (stored 0-based).
    pub p: [C64; 8],
    /// Local unitaries with `(X1 (x) X2) rho (X1 (x) X2)^dagger = rho_canonical`.
    pub x1: CMatrix,
    pub x2: CMatrix,
    /// Whether the input eigenvectors were exchanged to make `psi1` entangled.
    pub swapped: bool,
}

impl CanonicalForm {
    pub fn psi1(&self) -> CVector {
        let mut v = CVector::zeros(8);
        v[0] = C64::from(self.q1);
        v[5] = C64::from(self.q6);
        v
    }

    pub fn psi2(&self) -> CVector {
        CVector::from_column_slice(&self.p)
    }

    /// `p_k` with the 1-based index used in the literature.
    pub fn p(&self, k: usize) -> C64 {
        self.p[k - 1]
    }

    /// `w_j = (p_{2j-1}, p_{2j})`, `j = 1..4`.
    pub fn w(&self, j: usize) -> [C64; 2] {
        assert!((1..=4).contains(&j), "w index out of range");
        [self.p[2 * j - 2], self.p[2 * j - 1]]
    }

    pub fn state(&self) -> RankTwoState {
        RankTwoState {
            lambda: self.lambda,
            psi1: self.psi1(),
            psi2: self.psi2(),
        }
    }

    /// Builds a canonical form from raw data, checking the invariants.
    /// `X1`, `X2` are set to identities.
    pub fn from_parts(lambda: f64, q1: f64, q6: f64, p: [C64; 8]) -> Result<Self> {
        let cf = Self {
            lambda,
            q1,
            q6,
            p,
            x1: CMatrix::identity(2),
            x2: CMatrix::identity(4),
            swapped: false,
        };
        cf.check_invariants()?;
        Ok(cf)
    }

    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::NotCanonical(msg.to_string()));
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return fail("lambda outside (0, 1)");
        }
        if !(self.q1 > 0.0 && self.q6 > 0.0) {
            return fail("q1 and q6 must be positive");
        }
        if (self.q1 * self.q1 + self.q6 * self.q6 - 1.0).abs() > 1e-10 {
            return fail("q1^2 + q6^2 != 1");
        }
        let p1 = self.p(1);
        let p6 = self.p(6);
        if self.p(4).norm() > INVARIANT_TOL {
            return fail("p4 != 0");
        }
        if p1.im.abs() > INVARIANT_TOL || p1.re < -INVARIANT_TOL {
            return fail("p1 is not real non-negative");
        }
        if p6.im.abs() > INVARIANT_TOL || p6.re > INVARIANT_TOL {
            return fail("p6 is not real non-positive");
        }
        if (p1 * self.q1 + p6 * self.q6).norm() > INVARIANT_TOL {
            return fail("p1 q1 + p6 q6 != 0");
        }
        let norm: f64 = self.p.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return fail("psi2 is not normalized");
        }
        Ok(())
    }

    /// Max entrywise distance between the canonical density matrix and
    /// `(X1 (x) X2) rho (X1 (x) X2)^dagger`.
    pub fn residual(&self, original: &RankTwoState) -> f64 {
        let x = kron(&self.x1, &self.x2);
        let moved = &(&x * &original.matrix()) * &x.adjoint();
        moved.max_abs_diff(&self.state().matrix())
    }
}

pub fn canonicalize(s: &RankTwoState) -> Result<Canonicalized> {
    if s.dims() != (2, 4) {
        return Err(Error::UnsupportedShape {
            n_a: s.dims().0,
            n_b: s.dims().1,
        });
    }
    let overlap = crate::matops::inner(s.psi1(), s.psi2()).norm();
    if overlap > 1e-9 {
        return Err(Error::RankDeficient { overlap });
    }

    let first = schmidt_decompose(s.psi1(), 2, 4)?;
    let second = schmidt_decompose(s.psi2(), 2, 4)?;
    let first_entangled = !first.is_product(tol::PRODUCT_STATE);
    let second_entangled = !second.is_product(tol::PRODUCT_STATE);

    let (state, schmidt, swapped) = match (first_entangled, second_entangled) {
        (false, false) => return Ok(Canonicalized::BothSeparable),
        (true, _) => (s.clone(), first, false),
        (false, true) => (s.swapped(), second, true),
    };

    // X1 a_k = e_k and X2 b_k = e_k, then scaled into SU(2) and SU(4)
    let mut x1 = schmidt.basis_a.adjoint();
    let mut x2 = schmidt.basis_b.adjoint();
    x1 = x1.scale(unit_det_phase(&x1));
    x2 = x2.scale(unit_det_phase(&x2));

    // rotate span{b3, b4} so that r14 vanishes
    let x = kron(&x1, &x2);
    let psi2 = x.mul_vec(state.psi2())?;
    let (r13, r14) = (psi2[2], psi2[3]);
    let n = (r13.norm_sqr() + r14.norm_sqr()).sqrt();
    if n > 1e-14 {
        let mut rot = CMatrix::identity(4);
        rot[(2, 2)] = r13.conj() / n;
        rot[(2, 3)] = r14.conj() / n;
        rot[(3, 2)] = -r14 / n;
        rot[(3, 3)] = r13 / n;
        x2 = &rot * &x2;
    }

    let x = kron(&x1, &x2);
    let mut psi2 = x.mul_vec(state.psi2())?;
    // fix the free phase of psi2 so that p1 is real and non-negative
    let phase = match psi2.iter().find(|z| z.norm() > 1e-12) {
        Some(_) if psi2[0].norm() > 1e-12 => psi2[0].conj() / psi2[0].norm(),
        Some(&z) => z.conj() / z.norm(),
        None => ONE,
    };
    psi2 *= phase;
    psi2[0] = C64::from(psi2[0].norm());
    psi2[3] = ZERO;

    let mut p = [ZERO; 8];
    p.copy_from_slice(psi2.as_slice());
    let cf = CanonicalForm {
        lambda: state.lambda(),
        q1: schmidt.coeffs[0],
        q6: schmidt.coeffs[1],
        p,
        x1,
        x2,
        swapped,
    };
    cf.check_invariants()?;
    Ok(Canonicalized::Canonical(cf))
}

/// Phase `c` with `det(c X) = 1`.
fn unit_det_phase(x: &CMatrix) -> C64 {
    let det = x.determinant();
    C64::from_polar(1.0, -det.arg() / x.rows() as f64)
}
