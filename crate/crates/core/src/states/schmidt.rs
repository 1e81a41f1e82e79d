use nalgebra::{DMatrix, SVD};

use crate::error::{Error, Result};
use crate::matops::{CMatrix, CVector, C64, ONE, ZERO};

/// `psi = sum_k coeffs[k] a_k (x) b_k`, with `a_k` the columns of `basis_a`
/// and `b_k` the first columns of `basis_b`.
#[derive(Clone, Debug)]
pub struct Schmidt {
    /// Non-negative, descending, one per A-side dimension.
    pub coeffs: Vec<f64>,
    pub basis_a: CMatrix,
    pub basis_b: CMatrix,
}

impl Schmidt {
    pub fn is_product(&self, threshold: f64) -> bool {
        self.coeffs.get(1).is_none_or(|&c| c < threshold)
    }

    pub fn reconstruct(&self) -> CVector {
        let n_a = self.basis_a.rows();
        let n_b = self.basis_b.rows();
        let mut psi = CVector::zeros(n_a * n_b);
        for (k, &c) in self.coeffs.iter().enumerate() {
            psi += self.basis_a.column(k).kronecker(&self.basis_b.column(k)) * C64::from(c);
        }
        psi
    }
}

/// Schmidt decomposition of a unit vector on `C^{n_a} (x) C^{n_b}`, `n_a <= n_b`.
///
/// Each `a_k` is rephased so its first non-negligible component is real and
/// positive, which pins down the basis when coefficients are degenerate.
pub fn schmidt_decompose(psi: &CVector, n_a: usize, n_b: usize) -> Result<Schmidt> {
    if n_a == 0 || n_a > n_b || psi.len() != n_a * n_b {
        return Err(Error::dims(
            format!("vector of length n_a * n_b with n_a <= n_b ({n_a}x{n_b})"),
            psi.len(),
        ));
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidInput(format!("vector norm is {norm}, expected 1")));
    }

    let coeff = DMatrix::from_fn(n_a, n_b, |j, k| psi[j * n_b + k]);
    let svd = SVD::try_new(coeff, true, true, f64::EPSILON, 10_000)
        .ok_or(Error::NoConvergence { iterations: 10_000 })?;
    let u = svd.u.expect("u requested");
    let v_t = svd.v_t.expect("v_t requested");

    let mut order: Vec<usize> = (0..n_a).collect();
    order.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));

    let mut coeffs = Vec::with_capacity(n_a);
    let mut a_cols: Vec<CVector> = Vec::with_capacity(n_a);
    let mut b_cols: Vec<CVector> = Vec::with_capacity(n_a);
    for &k in &order {
        let mut a = u.column(k).into_owned();
        // psi[j, l] = sum_k s_k u[j, k] v_t[k, l]
        let mut b = v_t.row(k).transpose();
        if let Some(first) = a.iter().find(|z| z.norm() > 1e-12).copied() {
            let phase = first / first.norm();
            a *= phase.conj();
            b *= phase;
        }
        coeffs.push(svd.singular_values[k]);
        a_cols.push(a);
        b_cols.push(b);
    }

    let basis_a = CMatrix::from_fn(n_a, n_a, |i, j| a_cols[j][i]);
    let basis_b = complete_basis(&b_cols, n_b);
    Ok(Schmidt {
        coeffs,
        basis_a,
        basis_b,
    })
}

/// Extends orthonormal columns to a full unitary by Gram-Schmidt against the
/// standard basis. Columns that come out degenerate are replaced.
pub(crate) fn complete_basis(columns: &[CVector], n: usize) -> CMatrix {
    let mut accepted: Vec<CVector> = Vec::with_capacity(n);
    let standard = (0..n).map(|k| {
        let mut e = CVector::zeros(n);
        e[k] = ONE;
        e
    });
    for candidate in columns.iter().cloned().chain(standard) {
        if accepted.len() == n {
            break;
        }
        let mut v = candidate;
        // two passes keep the result orthogonal to working precision
        for _ in 0..2 {
            for q in &accepted {
                let proj = q.dotc(&v);
                v -= q * proj;
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            accepted.push(v.unscale(norm));
        }
    }
    CMatrix::from_fn(n, n, |i, j| accepted.get(j).map_or(ZERO, |v| v[i]))
}
