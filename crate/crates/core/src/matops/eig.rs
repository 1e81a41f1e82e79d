use nalgebra::{SymmetricEigen, SVD};

use super::{CMatrix, C64};
use crate::error::{Error, Result};
use crate::tol;

const MAX_ITERATIONS: usize = 10_000;

/// Eigendecomposition of a Hermitian matrix, eigenvalues in descending order.
#[derive(Clone, Debug)]
pub struct HermEig {
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: CMatrix,
}

impl HermEig {
    pub fn min(&self) -> f64 {
        *self.values.last().expect("empty spectrum")
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    /// Magnitude below which an eigenvalue is indistinguishable from zero.
    pub fn noise_floor(&self) -> f64 {
        let scale = self.max().abs().max(self.min().abs());
        16.0 * self.values.len() as f64 * f64::EPSILON * scale
    }

    /// `V diag(f(lambda)) V^dagger`.
    pub fn reassemble(&self, mut f: impl FnMut(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let v = self.vectors.as_nalgebra();
        let mut scaled = v.clone();
        for (k, &lam) in self.values.iter().enumerate() {
            let w = C64::from(f(lam));
            scaled.column_mut(k).iter_mut().for_each(|z| *z *= w);
        }
        let out = scaled * v.adjoint();
        debug_assert_eq!(out.nrows(), n);
        CMatrix::from_nalgebra(out)
    }
}

pub fn herm_eig(h: &CMatrix) -> Result<HermEig> {
    if !h.is_square() {
        return Err(Error::dims("square matrix", format!("{}x{}", h.rows(), h.cols())));
    }
    let deviation = h.hermitian_deviation();
    if deviation > tol::HERMITIAN {
        return Err(Error::NonHermitian { deviation });
    }
    // symmetrize so the solver sees an exactly Hermitian input
    let sym = (h.as_nalgebra() + h.as_nalgebra().adjoint()) * C64::from(0.5);
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, MAX_ITERATIONS).ok_or(
        Error::NoConvergence {
            iterations: MAX_ITERATIONS,
        },
    )?;

    let n = h.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(HermEig { values, vectors })
}

/// Principal square root of a Hermitian PSD matrix.
///
/// Eigenvalues in `[-1e-9, 0)` are clamped to zero before rooting, and so
/// are positive ones at the solver's roundoff level (`16 n eps |H|`), whose
/// square roots would otherwise show up as spurious `1e-8`-sized entries.
pub fn psd_sqrt(h: &CMatrix) -> Result<CMatrix> {
    psd_sqrt_truncated(h, 0.0)
}

/// Like [`psd_sqrt`] but drops every eigenvalue at or below
/// `max(floor, noise_floor)`.
pub fn psd_sqrt_truncated(h: &CMatrix, floor: f64) -> Result<CMatrix> {
    let eig = herm_eig(h)?;
    let min = eig.min();
    if min < -tol::PSD {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let cut = floor.max(eig.noise_floor());
    Ok(eig.reassemble(|lam| if lam <= cut { 0.0 } else { lam.sqrt() }))
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    let svd = SVD::try_new(
        m.as_nalgebra().clone(),
        false,
        false,
        f64::EPSILON,
        MAX_ITERATIONS,
    )
    .ok_or(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
    })?;
    let mut values: Vec<f64> = svd.singular_values.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}
