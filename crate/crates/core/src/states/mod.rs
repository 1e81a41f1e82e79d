//! Bipartite states: density matrices, rank-2 states, generators and the
//! local-unitary canonical form for 2x4 rank-2 states.

mod canonical;
mod decomposition;
pub mod families;
mod generators;
mod schmidt;

use crate::error::{Error, Result};
use crate::matops::{self, herm_eig, kron, CMatrix, CVector, HermEig};
use crate::tol;

pub use canonical::{canonicalize, CanonicalForm, Canonicalized};
pub use decomposition::{lift_separable_decomposition, Decomposition, ProductDecomposition, ProductTerm};
pub use generators::{
    make_ppt_form, make_separable, make_zce, make_zce_in_basis, random_local_unitaries,
    random_rank_two, random_rank_two_seeded, random_separable, random_separable_two_qubit,
    PptBlockForm,
};
pub use schmidt::{schmidt_decompose, Schmidt};

const NORM_TOL: f64 = 1e-10;
const ORTHO_TOL: f64 = 1e-9;

/// Hermitian, PSD, unit-trace matrix on `C^{n_a} (x) C^{n_b}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_a: usize,
    n_b: usize,
    mat: CMatrix,
}

impl DensityMatrix {
    pub fn new(n_a: usize, n_b: usize, mat: CMatrix) -> Result<Self> {
        let n = n_a * n_b;
        if n == 0 || mat.shape() != (n, n) {
            return Err(Error::dims(
                format!("{n}x{n} matrix for a {n_a}x{n_b} system"),
                format!("{}x{}", mat.rows(), mat.cols()),
            ));
        }
        let deviation = mat.hermitian_deviation();
        if deviation > tol::HERMITIAN {
            return Err(Error::NonHermitian { deviation });
        }
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > tol::HERMITIAN || trace.im.abs() > tol::HERMITIAN {
            return Err(Error::InvalidInput(format!("trace is {trace}, expected 1")));
        }
        let min = herm_eig(&mat)?.min();
        if min < -tol::PSD {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        Ok(Self { n_a, n_b, mat })
    }

    /// `|psi><psi|` for a unit vector.
    pub fn pure(n_a: usize, n_b: usize, psi: &CVector) -> Result<Self> {
        check_unit(psi)?;
        Self::new(n_a, n_b, CMatrix::outer(psi))
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn dim(&self) -> usize {
        self.n_a * self.n_b
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn eigen(&self) -> Result<HermEig> {
        herm_eig(&self.mat)
    }

    /// Number of eigenvalues above [`tol::RANK`].
    pub fn rank(&self) -> Result<usize> {
        Ok(self.eigen()?.values.iter().filter(|&&l| l > tol::RANK).count())
    }

    /// `(X1 (x) X2) rho (X1 (x) X2)^dagger`.
    pub fn local_transform(&self, x1: &CMatrix, x2: &CMatrix) -> Result<Self> {
        if x1.shape() != (self.n_a, self.n_a) || x2.shape() != (self.n_b, self.n_b) {
            return Err(Error::dims(
                format!("{}x{} and {}x{} local unitaries", self.n_a, self.n_a, self.n_b, self.n_b),
                format!("{}x{} and {}x{}", x1.rows(), x1.cols(), x2.rows(), x2.cols()),
            ));
        }
        let x = kron(x1, x2);
        Ok(Self {
            n_a: self.n_a,
            n_b: self.n_b,
            mat: &(&x * &self.mat) * &x.adjoint(),
        })
    }

    /// Spectral decomposition into a [`RankTwoState`]; fails unless exactly
    /// two eigenvalues exceed [`tol::RANK`].
    pub fn to_rank_two(&self) -> Result<RankTwoState> {
        let eig = self.eigen()?;
        let rank = eig.values.iter().filter(|&&l| l > tol::RANK).count();
        if rank != 2 {
            return Err(Error::WrongRank {
                expected: 2,
                found: rank,
            });
        }
        let total = eig.values[0] + eig.values[1];
        RankTwoState::new(
            eig.values[0] / total,
            eig.vectors.column(0),
            eig.vectors.column(1),
        )
    }
}

/// `rho = lambda |psi1><psi1| + (1 - lambda) |psi2><psi2|` with orthonormal
/// `psi1`, `psi2`. Vectors live on `C^2 (x) C^{len/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RankTwoState {
    lambda: f64,
    psi1: CVector,
    psi2: CVector,
}

impl RankTwoState {
    pub fn new(lambda: f64, psi1: CVector, psi2: CVector) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::OutOfRange(format!("lambda = {lambda} not in (0, 1)")));
        }
        if psi1.len() != psi2.len() || psi1.len() < 2 || !psi1.len().is_multiple_of(2) {
            return Err(Error::dims(
                "two vectors of equal even length",
                format!("lengths {} and {}", psi1.len(), psi2.len()),
            ));
        }
        check_unit(&psi1)?;
        check_unit(&psi2)?;
        let overlap = matops::inner(&psi1, &psi2).norm();
        if overlap > ORTHO_TOL {
            return Err(Error::RankDeficient { overlap });
        }
        Ok(Self { lambda, psi1, psi2 })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn psi1(&self) -> &CVector {
        &self.psi1
    }

    pub fn psi2(&self) -> &CVector {
        &self.psi2
    }

    /// `(n_a, n_b)`; `n_a` is always 2.
    pub fn dims(&self) -> (usize, usize) {
        (2, self.psi1.len() / 2)
    }

    pub fn matrix(&self) -> CMatrix {
        &CMatrix::outer(&self.psi1).scale_real(self.lambda)
            + &CMatrix::outer(&self.psi2).scale_real(1.0 - self.lambda)
    }

    pub fn density(&self) -> DensityMatrix {
        let (n_a, n_b) = self.dims();
        DensityMatrix {
            n_a,
            n_b,
            mat: self.matrix(),
        }
    }

    /// Applies `X1 (x) X2` to both eigenvectors.
    pub fn local_transform(&self, x1: &CMatrix, x2: &CMatrix) -> Result<Self> {
        let (n_a, n_b) = self.dims();
        if x1.shape() != (n_a, n_a) || x2.shape() != (n_b, n_b) {
            return Err(Error::dims(
                format!("{n_a}x{n_a} and {n_b}x{n_b} local unitaries"),
                format!("{}x{} and {}x{}", x1.rows(), x1.cols(), x2.rows(), x2.cols()),
            ));
        }
        let x = kron(x1, x2);
        Ok(Self {
            lambda: self.lambda,
            psi1: x.mul_vec(&self.psi1)?,
            psi2: x.mul_vec(&self.psi2)?,
        })
    }

    /// Same state with the eigenvector roles exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            lambda: 1.0 - self.lambda,
            psi1: self.psi2.clone(),
            psi2: self.psi1.clone(),
        }
    }
}

fn check_unit(psi: &CVector) -> Result<()> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::InvalidInput(format!("vector norm is {norm}, expected 1")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matops::{basis, C64};

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(2, 4, CMatrix::identity(8).scale_real(0.125)).is_ok());
        assert!(DensityMatrix::new(2, 4, CMatrix::identity(8)).is_err());
        assert!(DensityMatrix::new(2, 2, CMatrix::identity(8).scale_real(0.125)).is_err());
        let neg = CMatrix::from_real_diagonal(&[1.5, -0.5, 0.0, 0.0]);
        assert!(matches!(DensityMatrix::new(2, 2, neg), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn rank_two_validation() {
        let e0 = basis(8, 0);
        let e1 = basis(8, 1);
        assert!(RankTwoState::new(0.3, e0.clone(), e1.clone()).is_ok());
        assert!(RankTwoState::new(0.0, e0.clone(), e1.clone()).is_err());
        assert!(RankTwoState::new(1.0, e0.clone(), e1.clone()).is_err());
        let tilted = (&e0 + &e1).unscale(2f64.sqrt());
        assert!(matches!(
            RankTwoState::new(0.5, e0.clone(), tilted),
            Err(Error::RankDeficient { .. })
        ));
        assert!(RankTwoState::new(0.5, e0 * C64::from(2.0), e1).is_err());
    }

    #[test]
    fn spectral_round_trip() {
        let s = random_rank_two_seeded(4);
        let back = s.density().to_rank_two().unwrap();
        assert!(back.matrix().approx_eq(&s.matrix(), 1e-12));
        let full = DensityMatrix::new(2, 4, CMatrix::identity(8).scale_real(0.125)).unwrap();
        assert!(matches!(full.to_rank_two(), Err(Error::WrongRank { found: 8, .. })));
    }
}
