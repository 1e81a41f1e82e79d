use crate::error::{Error, Result};
use crate::matops::{herm_eig, partial_transpose_a, principal_minor, CMatrix};
use crate::registry::Registry;
use crate::states::DensityMatrix;
use crate::tol;

/// `(is_ppt, min_eig)` for `rho^{T_A}`; PPT means `min_eig >= -1e-9`.
pub fn ppt_test(rho: &DensityMatrix) -> Result<(bool, f64)> {
    let pt = partial_transpose_a(rho.matrix(), rho.n_a(), rho.n_b())?;
    let min = herm_eig(&pt)?.min();
    Ok((min >= -tol::PSD, min))
}

/// Sylvester's criterion: every one of the `2^n - 1` principal minors is at
/// least `-1e-8`.
pub fn sylvester_psd(h: &CMatrix) -> Result<bool> {
    let deviation = h.hermitian_deviation();
    if deviation > tol::HERMITIAN {
        return Err(Error::NonHermitian { deviation });
    }
    let n = h.rows();
    if n > 16 {
        return Err(Error::dims("at most 16 rows", n));
    }
    let mut indices = Vec::with_capacity(n);
    for mask in 1u32..(1 << n) {
        indices.clear();
        indices.extend((0..n).filter(|&k| mask & (1 << k) != 0));
        if principal_minor(h, &indices)? < -tol::MINOR {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Positive-semidefiniteness test for Hermitian matrices.
pub trait PsdTest: Send + Sync {
    fn is_psd(&self, h: &CMatrix) -> Result<bool>;
}

struct EigenTest;
struct SylvesterTest;

impl PsdTest for EigenTest {
    fn is_psd(&self, h: &CMatrix) -> Result<bool> {
        Ok(herm_eig(h)?.min() >= -tol::PSD)
    }
}

impl PsdTest for SylvesterTest {
    fn is_psd(&self, h: &CMatrix) -> Result<bool> {
        sylvester_psd(h)
    }
}

pub fn psd_test_registry() -> Registry<dyn PsdTest> {
    Registry::<dyn PsdTest>::new("PSD test")
        .with("eigen", Box::new(EigenTest))
        .with("sylvester", Box::new(SylvesterTest))
}
