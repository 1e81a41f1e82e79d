//! Dense complex-matrix kernel.
//!
//! Everything in this crate is at most 8x8, so all storage is dense and all
//! operations allocate freely. [`CMatrix`] wraps an `nalgebra` matrix and adds
//! the handful of operations the entanglement code needs: Hermitian
//! eigendecomposition, PSD square roots, Kronecker products, partial
//! transposition and principal minors.

mod eig;
mod repr;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eig::{herm_eig, psd_sqrt, psd_sqrt_truncated, singular_values, HermEig};
pub use repr::{complex_pair, complex_vec};

pub type C64 = Complex64;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    inner: DMatrix<C64>,
}

impl CMatrix {
    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::dims(
                format!("{} entries", rows * cols),
                format!("{} entries", entries.len()),
            ));
        }
        Ok(Self {
            inner: DMatrix::from_row_slice(rows, cols, &entries),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self {
            inner: DMatrix::from_fn(rows, cols, f),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            inner: DMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: DMatrix::identity(n, n),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { C64::from(diag[i]) } else { ZERO })
    }

    /// Rank-one projector `|v><v|`.
    pub fn outer(v: &CVector) -> Self {
        Self {
            inner: v * v.adjoint(),
        }
    }

    pub fn from_nalgebra(inner: DMatrix<C64>) -> Self {
        Self { inner }
    }

    pub fn as_nalgebra(&self) -> &DMatrix<C64> {
        &self.inner
    }

    pub fn into_nalgebra(self) -> DMatrix<C64> {
        self.inner
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    /// Entries in row-major order.
    pub fn row_major(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.inner[(i, j)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            inner: self.inner.transpose(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            inner: self.inner.map(|z| z.conj()),
        }
    }

    pub fn trace(&self) -> C64 {
        self.inner.trace()
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            inner: &self.inner * c,
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::from(c))
    }

    pub fn mul_vec(&self, v: &CVector) -> Result<CVector> {
        if v.len() != self.cols() {
            return Err(Error::dims(format!("vector of length {}", self.cols()), v.len()));
        }
        Ok(&self.inner * v)
    }

    pub fn column(&self, j: usize) -> CVector {
        self.inner.column(j).into_owned()
    }

    /// Largest entrywise modulus of `self - other`. Panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Entrywise equality within an absolute tolerance.
    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        self.shape() == other.shape() && self.max_abs_diff(other) <= tol
    }

    pub fn shape(&self) -> (usize, usize) {
        self.inner.shape()
    }

    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square() && (self * &self.adjoint()).approx_eq(&Self::identity(self.rows()), tol)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square() && self.approx_eq(&self.transpose(), tol)
    }

    pub fn is_antisymmetric(&self, tol: f64) -> bool {
        self.is_square() && self.approx_eq(&-self.transpose(), tol)
    }

    pub fn determinant(&self) -> C64 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        self.inner.determinant()
    }

    /// Copies the `rows x cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self {
            inner: self.inner.view((r0, c0), (rows, cols)).into_owned(),
        }
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &CMatrix) {
        self.inner
            .view_mut((r0, c0), block.shape())
            .copy_from(&block.inner);
    }

    /// Sub-matrix at the intersection of the given rows and columns.
    pub fn select(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), indices.len(), |i, j| {
            self.inner[(indices[i], indices[j])]
        })
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.inner[idx]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut C64 {
        &mut self.inner[idx]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "  ")?;
            for j in 0..self.cols() {
                let z = self.inner[(i, j)];
                write!(f, "{:>9.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mul<&CMatrix> for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols(), rhs.rows(), "matrix product shape mismatch");
        CMatrix {
            inner: &self.inner * &rhs.inner,
        }
    }
}

impl Add<&CMatrix> for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        CMatrix {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl Sub<&CMatrix> for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        CMatrix {
            inner: &self.inner - &rhs.inner,
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;

    fn neg(self) -> CMatrix {
        CMatrix {
            inner: -&self.inner,
        }
    }
}

impl Neg for CMatrix {
    type Output = CMatrix;

    fn neg(self) -> CMatrix {
        CMatrix { inner: -self.inner }
    }
}

/// `J_{2m}`: identity in the upper-right block, minus identity in the lower-left.
pub fn j_matrix(half_dim: usize) -> CMatrix {
    assert!(half_dim > 0, "J_{{2m}} needs m >= 1");
    let m = half_dim;
    CMatrix::from_fn(2 * m, 2 * m, |i, j| {
        if i < m && j == i + m {
            ONE
        } else if i >= m && j + m == i {
            -ONE
        } else {
            ZERO
        }
    })
}

/// Kronecker product `A (x) B`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    CMatrix {
        inner: a.inner.kronecker(&b.inner),
    }
}

pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    a.kronecker(b)
}

/// Partial transpose over the first (A) factor of an `n_a * n_b` square matrix.
///
/// The `n_b x n_b` block at block position `(i, j)` is exchanged with the one
/// at `(j, i)`.
pub fn partial_transpose_a(rho: &CMatrix, n_a: usize, n_b: usize) -> Result<CMatrix> {
    let n = n_a * n_b;
    if n_a == 0 || n_b == 0 || rho.shape() != (n, n) {
        return Err(Error::dims(
            format!("{n}x{n} for {n_a}x{n_b} system"),
            format!("{}x{}", rho.rows(), rho.cols()),
        ));
    }
    Ok(CMatrix::from_fn(n, n, |r, c| {
        let (ia, ib) = (r / n_b, r % n_b);
        let (ja, jb) = (c / n_b, c % n_b);
        rho[(ja * n_b + ib, ia * n_b + jb)]
    }))
}

/// Determinant of the principal sub-matrix on `indices` (0-based, strictly
/// increasing). The imaginary part, which vanishes for Hermitian input, is
/// dropped.
pub fn principal_minor(h: &CMatrix, indices: &[usize]) -> Result<f64> {
    let n = h.rows();
    let valid = h.is_square()
        && !indices.is_empty()
        && indices.windows(2).all(|w| w[0] < w[1])
        && indices.last().is_some_and(|&k| k < n);
    if !valid {
        return Err(Error::IndexOutOfRange {
            indices: indices.to_vec(),
            dim: n,
        });
    }
    let det = h.select(indices).determinant();
    if det.im.abs() > 1e-9 * det.re.abs().max(1.0) {
        return Err(Error::NonHermitian {
            deviation: det.im.abs(),
        });
    }
    Ok(det.re)
}

/// Euclidean inner product `<a|b>` (antilinear in `a`).
pub fn inner(a: &CVector, b: &CVector) -> C64 {
    a.dotc(b)
}

pub fn conj_vec(v: &CVector) -> CVector {
    v.map(|z| z.conj())
}

pub fn cvec(entries: &[C64]) -> CVector {
    CVector::from_column_slice(entries)
}

/// Real entries promoted to a complex vector.
pub fn rvec(entries: &[f64]) -> CVector {
    CVector::from_iterator(entries.len(), entries.iter().map(|&x| C64::from(x)))
}

/// Standard basis vector `e_k` of dimension `n`.
pub fn basis(n: usize, k: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[k] = ONE;
    v
}
