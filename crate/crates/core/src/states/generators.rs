use rand::Rng;

use super::decomposition::{ProductDecomposition, ProductTerm};
use super::{DensityMatrix, RankTwoState};
use crate::error::{Error, Result};
use crate::matops::{basis, CMatrix, CVector, C64};
use crate::rng::{self, SeededRng};
use crate::symmetries::random_special_unitary;

/// Rows and columns of the 2x4 space that carry `rho-tilde`: index `(j, d)`
/// of the two-qubit space goes to `4 j + d`.
const EMBED: [usize; 4] = [0, 1, 4, 5];

/// Zero-concurrence entangled state with `lambda = 1/2`,
/// `psi1 = q1 |a1 b1> + q6 |a2 b2>` and `psi2 = q1 |a1 b3> + q6 e^{i phi} |a2 b4>`.
pub fn make_zce(q1: f64, phi: f64) -> Result<RankTwoState> {
    if !(q1 > 0.0 && q1 < 1.0) {
        return Err(Error::OutOfRange(format!("q1 = {q1} not in (0, 1)")));
    }
    if !phi.is_finite() {
        return Err(Error::OutOfRange(format!("phi = {phi} is not finite")));
    }
    let q6 = (1.0 - q1 * q1).sqrt();
    let psi1 = basis(8, 0) * C64::from(q1) + basis(8, 5) * C64::from(q6);
    let psi2 = basis(8, 2) * C64::from(q1) + basis(8, 7) * C64::from_polar(q6, phi);
    Ok(RankTwoState {
        lambda: 0.5,
        psi1,
        psi2,
    })
}

/// [`make_zce`] expressed in the local bases given by the columns of `x1`, `x2`.
pub fn make_zce_in_basis(q1: f64, phi: f64, x1: &CMatrix, x2: &CMatrix) -> Result<RankTwoState> {
    if !x1.is_unitary(1e-9) || !x2.is_unitary(1e-9) {
        return Err(Error::InvalidInput("local basis matrices must be unitary".into()));
    }
    make_zce(q1, phi)?.local_transform(x1, x2)
}

/// The 2x2 blocks `rho11`, `rho12`, `rho22` of a two-qubit `rho-tilde`,
/// which also define the embedded 2x4 state.
#[derive(Clone, Debug)]
pub struct PptBlockForm {
    pub rho11: CMatrix,
    pub rho12: CMatrix,
    pub rho22: CMatrix,
}

impl PptBlockForm {
    pub fn from_tilde(tilde: &DensityMatrix) -> Result<Self> {
        if (tilde.n_a(), tilde.n_b()) != (2, 2) {
            return Err(Error::InvalidInput(format!(
                "rho-tilde must be a two-qubit state, got {}x{}",
                tilde.n_a(),
                tilde.n_b()
            )));
        }
        let m = tilde.matrix();
        Ok(Self {
            rho11: m.block(0, 0, 2, 2),
            rho12: m.block(0, 2, 2, 2),
            rho22: m.block(2, 2, 2, 2),
        })
    }

    /// `[[rho11, rho12], [rho12^dagger, rho22]]`.
    pub fn tilde(&self) -> CMatrix {
        let mut m = CMatrix::zeros(4, 4);
        m.set_block(0, 0, &self.rho11);
        m.set_block(0, 2, &self.rho12);
        m.set_block(2, 0, &self.rho12.adjoint());
        m.set_block(2, 2, &self.rho22);
        m
    }

    /// The 8x8 matrix: blocks land on rows and columns `{0, 1}` and `{4, 5}`.
    pub fn assemble(&self) -> CMatrix {
        let tilde = self.tilde();
        let mut m = CMatrix::zeros(8, 8);
        for (i, &r) in EMBED.iter().enumerate() {
            for (j, &c) in EMBED.iter().enumerate() {
                m[(r, c)] = tilde[(i, j)];
            }
        }
        m
    }
}

pub fn make_ppt_form(tilde: &DensityMatrix) -> Result<DensityMatrix> {
    let blocks = PptBlockForm::from_tilde(tilde)?;
    DensityMatrix::new(2, 4, blocks.assemble())
}

/// `sum_j mu_j |a_j><a_j| (x) |b_j><b_j|`.
pub fn make_separable(terms: &[(f64, CVector, CVector)]) -> Result<DensityMatrix> {
    let total: f64 = terms.iter().map(|t| t.0).sum();
    if !terms.is_empty() && (total - 1.0).abs() > 1e-12 {
        return Err(Error::WeightError(format!("weights sum to {total}, expected 1")));
    }
    for (_, a, b) in terms {
        for v in [a, b] {
            if (v.norm() - 1.0).abs() > 1e-10 {
                return Err(Error::InvalidInput("local states must be unit vectors".into()));
            }
        }
    }
    let dec = ProductDecomposition::new(
        terms
            .iter()
            .map(|(w, a, b)| ProductTerm::pure(*w, a, b))
            .collect(),
    )?;
    dec.density()
}

/// Two orthonormalized complex-Gaussian vectors on `C^2 (x) C^4` with
/// `lambda` uniform in `(0.05, 0.95)`.
pub fn random_rank_two<R: Rng + ?Sized>(rng: &mut R) -> RankTwoState {
    loop {
        let lambda = rng.random_range(0.05..0.95);
        let psi1 = rng::random_unit_vector(rng, 8);
        let mut psi2 = rng::gaussian_vector(rng, 8);
        let proj = psi1.dotc(&psi2);
        psi2 -= &psi1 * proj;
        let norm = psi2.norm();
        if norm < 1e-6 {
            continue;
        }
        psi2.unscale_mut(norm);
        let proj = psi1.dotc(&psi2);
        psi2 -= &psi1 * proj;
        let norm = psi2.norm();
        psi2.unscale_mut(norm);
        return RankTwoState { lambda, psi1, psi2 };
    }
}

pub fn random_rank_two_seeded(seed: u64) -> RankTwoState {
    random_rank_two(&mut rng::seeded(seed))
}

/// Random mixture of `terms` pure product states on `C^2 (x) C^{n_b}`,
/// returned together with the decomposition that certifies separability.
pub fn random_separable<R: Rng + ?Sized>(
    rng: &mut R,
    terms: usize,
    n_b: usize,
) -> Result<(DensityMatrix, ProductDecomposition)> {
    if terms == 0 {
        return Err(Error::WeightError("at least one term is required".into()));
    }
    let raw: Vec<f64> = (0..terms).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let product_terms = raw
        .iter()
        .map(|w| {
            let a = rng::random_unit_vector(rng, 2);
            let b = rng::random_unit_vector(rng, n_b);
            ProductTerm::pure(w / total, &a, &b)
        })
        .collect();
    let dec = ProductDecomposition::new(product_terms)?;
    Ok((dec.density()?, dec))
}

pub fn random_separable_two_qubit<R: Rng + ?Sized>(
    rng: &mut R,
    terms: usize,
) -> Result<(DensityMatrix, ProductDecomposition)> {
    random_separable(rng, terms, 2)
}

/// Independent random `X1` in SU(2) and `X2` in SU(4).
pub fn random_local_unitaries(rng: &mut SeededRng) -> (CMatrix, CMatrix) {
    let x1 = random_special_unitary(rng, 2);
    let x2 = random_special_unitary(rng, 4);
    (x1, x2)
}
