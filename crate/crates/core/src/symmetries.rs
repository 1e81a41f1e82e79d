//! Antiunitary conjugations `Theta |psi> = M |psi-bar>` on a 2x4 system.
//!
//! Every conjugation that factors as a tensor product of two
//! skew-conjugations has the matrix `M = J2 (x) T J4 T^T` for some
//! `T` in SU(4). Splitting `T` into a symplectic factor (which leaves `J4`
//! fixed) and `exp(G t)` with `G` in the orthogonal complement of `sp(2)`
//! gives a closed form in terms of a 2x2 skew-Hermitian `A`, a complex `b`
//! and a real `t`; see [`CartanParams`].

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matops::{self, complex_pair, j_matrix, kron, CMatrix, CVector, C64, ONE};
use crate::rng;
use crate::tol;

const UNITARY_TOL: f64 = 1e-9;
const SKEW_HERMITIAN_TOL: f64 = 1e-12;

/// Conjugation matrix `M`: unitary and symmetric, so `M M-bar = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Conjugation {
    m: CMatrix,
}

impl Conjugation {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::dims("square matrix", format!("{}x{}", m.rows(), m.cols())));
        }
        if !m.is_unitary(UNITARY_TOL) {
            return Err(Error::InvalidInput("conjugation matrix is not unitary".into()));
        }
        if !m.is_symmetric(UNITARY_TOL) {
            return Err(Error::InvalidInput("conjugation matrix is not symmetric".into()));
        }
        Ok(Self { m })
    }

    /// `J2 (x) J4`, the conjugation at `T = 1`.
    pub fn standard() -> Self {
        Self {
            m: kron(&j_matrix(1), &j_matrix(2)),
        }
    }

    /// `J2 (x) J2`, the two-qubit spin flip.
    pub fn spin_flip() -> Self {
        Self {
            m: kron(&j_matrix(1), &j_matrix(1)),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    /// Upper-right block `W` when `M = J2 (x) W`.
    pub fn b_factor(&self) -> CMatrix {
        let h = self.dim() / 2;
        self.m.block(0, h, h, h)
    }

    /// Whether `M = J2 (x) W` with `W` antisymmetric unitary.
    pub fn has_tensor_form(&self, tol: f64) -> bool {
        if !self.dim().is_multiple_of(2) {
            return false;
        }
        let w = self.b_factor();
        kron(&j_matrix(1), &w).approx_eq(&self.m, tol)
            && w.is_antisymmetric(tol)
            && w.is_unitary(tol)
    }
}

/// `S = T J T^T`, the matrix of a skew-conjugation (`S S-bar = -1`).
#[derive(Clone, Debug, PartialEq)]
pub struct SkewConjugation {
    s: CMatrix,
}

impl SkewConjugation {
    pub fn from_special_unitary(t: &CMatrix) -> Result<Self> {
        check_special_unitary(t)?;
        if !t.rows().is_multiple_of(2) {
            return Err(Error::dims("even dimension", t.rows()));
        }
        let s = &(t * &j_matrix(t.rows() / 2)) * &t.transpose();
        Ok(Self { s })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.s
    }
}

/// Reduced parameters `(A, b, t)` for the conjugation family.
///
/// `A` is 2x2 skew-Hermitian. The closed form is evaluated on its traceless
/// part; the trace only multiplies `M` by the unit phase `exp(tr(A) t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartanParams {
    #[serde(rename = "A")]
    a: CMatrix,
    #[serde(with = "complex_pair")]
    b: C64,
    t: f64,
}

impl CartanParams {
    pub fn new(a: CMatrix, b: C64, t: f64) -> Result<Self> {
        if a.shape() != (2, 2) {
            return Err(Error::dims("2x2", format!("{}x{}", a.rows(), a.cols())));
        }
        let deviation = (&a + &a.adjoint()).max_abs();
        if deviation > SKEW_HERMITIAN_TOL {
            return Err(Error::NotSkewHermitian { deviation });
        }
        if !(b.re.is_finite() && b.im.is_finite() && t.is_finite()) {
            return Err(Error::InvalidInput("non-finite Cartan parameter".into()));
        }
        Ok(Self { a, b, t })
    }

    /// Re-validates after deserialization.
    pub fn validated(self) -> Result<Self> {
        Self::new(self.a, self.b, self.t)
    }

    /// Parameters from 7 reals: `A = [[i x0, x1 + i x2], [-x1 + i x2, i x3]]`,
    /// `b = x4 + i x5`, `t = x6`.
    pub fn from_vector(x: &[f64; 7]) -> Self {
        let a = CMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => C64::new(0.0, x[0]),
            (0, 1) => C64::new(x[1], x[2]),
            (1, 0) => C64::new(-x[1], x[2]),
            _ => C64::new(0.0, x[3]),
        });
        Self {
            a,
            b: C64::new(x[4], x[5]),
            t: x[6],
        }
    }

    pub fn to_vector(&self) -> [f64; 7] {
        let a = &self.a;
        [
            a[(0, 0)].im,
            a[(0, 1)].re,
            a[(0, 1)].im,
            a[(1, 1)].im,
            self.b.re,
            self.b.im,
            self.t,
        ]
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// `A` with its trace removed.
    pub fn traceless_a(&self) -> CMatrix {
        let shift = self.a.trace() * 0.5;
        &self.a - &CMatrix::identity(2).scale(shift)
    }

    /// `exp(tr(A) t)`, a unit-modulus phase since `tr(A)` is imaginary.
    pub fn trace_phase(&self) -> C64 {
        (self.a.trace() * self.t).exp()
    }

    /// `G = [[A, b J2], [b-bar J2, A^T]]` with the full `A`.
    pub fn generator(&self) -> CMatrix {
        generator_from(&self.a, self.b)
    }

    /// `G` built from the traceless part of `A`.
    pub fn reduced_generator(&self) -> CMatrix {
        generator_from(&self.traceless_a(), self.b)
    }

    /// `H = 2 G J4` for the reduced generator.
    pub fn h(&self) -> CMatrix {
        (&self.reduced_generator() * &j_matrix(2)).scale_real(2.0)
    }

    /// `eta = sqrt(tr(H H^dagger)) / 2`.
    pub fn eta(&self) -> f64 {
        let h = self.h();
        0.5 * (&h * &h.adjoint()).trace().re.max(0.0).sqrt()
    }

    /// `(cos(eta t), sin(eta t) / eta)`, with the `eta -> 0` limit `(1, t)`
    /// for the second entry.
    pub fn trig(&self) -> (f64, f64) {
        let eta = self.eta();
        if eta <= tol::ETA_ZERO {
            (1.0, self.t)
        } else {
            ((eta * self.t).cos(), (eta * self.t).sin() / eta)
        }
    }

    /// `cos(eta t) 1 + 2 sin(eta t)/eta A0` with `A0` the traceless part.
    pub fn rotation_block(&self) -> CMatrix {
        let (c, s) = self.trig();
        let eta = self.eta();
        if eta <= tol::ETA_ZERO {
            return CMatrix::identity(2);
        }
        &CMatrix::identity(2).scale_real(c) + &self.traceless_a().scale_real(2.0 * s)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut x = [0.0; 7];
        for (k, v) in x.iter_mut().enumerate() {
            *v = if k == 6 {
                rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)
            } else {
                rng.random_range(-1.5..1.5)
            };
        }
        Self::from_vector(&x)
    }
}

fn generator_from(a: &CMatrix, b: C64) -> CMatrix {
    let j2 = j_matrix(1);
    let mut g = CMatrix::zeros(4, 4);
    g.set_block(0, 0, a);
    g.set_block(0, 2, &j2.scale(b));
    g.set_block(2, 0, &j2.scale(b.conj()));
    g.set_block(2, 2, &a.transpose());
    g
}

fn check_special_unitary(t: &CMatrix) -> Result<()> {
    if !t.is_square() {
        return Err(Error::NotSpecialUnitary("not square".into()));
    }
    if !t.is_unitary(UNITARY_TOL) {
        return Err(Error::NotSpecialUnitary("T T^dagger != 1".into()));
    }
    let det = t.determinant();
    if (det - ONE).norm() > UNITARY_TOL {
        return Err(Error::NotSpecialUnitary(format!("det T = {det}")));
    }
    Ok(())
}

/// `M = J2 (x) T J4 T^T` for `T` in SU(4).
pub fn conjugation_from_su4(t: &CMatrix) -> Result<Conjugation> {
    if t.shape() != (4, 4) {
        return Err(Error::NotSpecialUnitary(format!(
            "expected 4x4, found {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    let skew = SkewConjugation::from_special_unitary(t)?;
    Ok(Conjugation {
        m: kron(&j_matrix(1), skew.matrix()),
    })
}

/// `M = J2 (x) (cos(eta t) J4 + sin(eta t)/eta H)`, falling back to
/// `J2 (x) J4` when `eta` vanishes. A trace part of `A` contributes the
/// overall phase [`CartanParams::trace_phase`].
pub fn conjugation_from_params(p: &CartanParams) -> Conjugation {
    let j4 = j_matrix(2);
    let eta = p.eta();
    let w = if eta <= tol::ETA_ZERO {
        j4
    } else {
        let (c, s) = p.trig();
        &j4.scale_real(c) + &p.h().scale_real(s)
    };
    Conjugation {
        m: kron(&j_matrix(1), &w.scale(p.trace_phase())),
    }
}

/// Random element of SU(n): QR of a complex-Gaussian matrix with the phases
/// of `R`'s diagonal moved into `Q`, then scaled to unit determinant.
pub fn random_special_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    assert!(n > 0, "dimension must be positive");
    loop {
        let z = DMatrix::from_fn(n, n, |_, _| rng::complex_gaussian(rng));
        let qr = z.qr();
        let r = qr.r();
        if (0..n).any(|k| r[(k, k)].norm() < 1e-10) {
            continue;
        }
        let mut q = qr.q();
        for k in 0..n {
            let phase = r[(k, k)] / r[(k, k)].norm();
            q.column_mut(k).iter_mut().for_each(|x| *x *= phase);
        }
        let q = CMatrix::from_nalgebra(q);
        let det = q.determinant();
        let root = C64::from_polar(1.0, -det.arg() / n as f64);
        return q.scale(root);
    }
}

pub fn random_special_unitary_seeded(n: usize, seed: u64) -> CMatrix {
    random_special_unitary(&mut rng::seeded(seed), n)
}

/// Random conjugation `J2 (x) T J4 T^T` with `T` drawn from SU(4).
pub fn random_conjugation<R: Rng + ?Sized>(rng: &mut R) -> Conjugation {
    let t = random_special_unitary(rng, 4);
    conjugation_from_su4(&t).expect("sampled T is special unitary")
}

/// `Theta |psi> = M |psi-bar>`.
pub fn apply_conjugation(m: &Conjugation, psi: &CVector) -> Result<CVector> {
    m.matrix().mul_vec(&matops::conj_vec(psi))
}

/// `theta(rho) = Theta rho Theta^-1 = M rho-bar M^dagger`.
pub fn superoperator_apply(m: &Conjugation, rho: &CMatrix) -> Result<CMatrix> {
    if rho.shape() != m.matrix().shape() {
        return Err(Error::dims(
            format!("{0}x{0}", m.dim()),
            format!("{}x{}", rho.rows(), rho.cols()),
        ));
    }
    Ok(&(m.matrix() * &rho.conj()) * &m.matrix().adjoint())
}
