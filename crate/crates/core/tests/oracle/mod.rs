//! Reference computations for the test suites. Nothing here calls the
//! library's eigensolvers, closed forms or concurrence kernels.
#![allow(dead_code)]

use zc_core::matops::{j_matrix, kron, CMatrix, CVector, C64};
use zc_core::states::RankTwoState;
use zc_core::symmetries::CartanParams;

fn one_norm(m: &CMatrix) -> f64 {
    (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring of a Taylor series.
pub fn expm(m: &CMatrix) -> CMatrix {
    let n = m.rows();
    let norm = one_norm(m);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let a = m.scale_real(0.5f64.powi(squarings));
    let mut sum = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    for k in 1..40 {
        term = (&term * &a).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        if term.max_abs() < 1e-20 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `G = [[A, b J2], [conj(b) J2, A^T]]` written out entry by entry.
pub fn generator(p: &CartanParams) -> CMatrix {
    let a = p.a();
    let b = p.b();
    let mut g = CMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            g[(i, j)] = a[(i, j)];
            g[(i + 2, j + 2)] = a[(j, i)];
        }
    }
    g[(0, 3)] = b;
    g[(1, 2)] = -b;
    g[(2, 1)] = b.conj();
    g[(3, 0)] = -b.conj();
    g
}

/// `J2 (x) T J4 T^T` with `T = exp(t G)`.
pub fn conjugation_via_expm(p: &CartanParams) -> CMatrix {
    let t = expm(&generator(p).scale_real(p.t()));
    kron(&j_matrix(1), &(&(&t * &j_matrix(2)) * &t.transpose()))
}

fn bilinear(x: &CVector, m: &CMatrix, y: &CVector) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..x.len() {
        for j in 0..y.len() {
            acc += x[i].conj() * m[(i, j)] * y[j].conj();
        }
    }
    acc
}

/// Preconcurrence matrix `tau_ij = <v_i| M |conj(v_j)>` with subnormalized
/// eigenvectors.
pub fn preconcurrence(s: &RankTwoState, m: &CMatrix) -> [[C64; 2]; 2] {
    let w = [s.lambda().sqrt(), (1.0 - s.lambda()).sqrt()];
    let v = [s.psi1(), s.psi2()];
    let mut tau = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            tau[i][j] = bilinear(v[i], m, v[j]) * (w[i] * w[j]);
        }
    }
    tau
}

/// `sigma_1 - sigma_2 = sqrt(||tau||_F^2 - 2 |det tau|)`.
pub fn rank_two_concurrence(s: &RankTwoState, m: &CMatrix) -> f64 {
    let t = preconcurrence(s, m);
    let frob: f64 = t.iter().flatten().map(|z| z.norm_sqr()).sum();
    let det = (t[0][0] * t[1][1] - t[0][1] * t[1][0]).norm();
    (frob - 2.0 * det).max(0.0).sqrt()
}

/// `B = sqrt(L) C L C^dagger sqrt(L)` multiplied out by hand.
pub fn explicit_b(alpha: C64, beta: C64, gamma: C64, lambda: f64) -> [[C64; 2]; 2] {
    let l = [lambda, 1.0 - lambda];
    let c = [[alpha, beta], [beta, gamma]];
    let mut b = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..2 {
                acc += c[i][k] * l[k] * c[j][k].conj();
            }
            b[i][j] = acc * (l[i] * l[j]).sqrt();
        }
    }
    b
}

/// Squared eigenvalue gap of a 2x2 Hermitian matrix.
pub fn hermitian_gap(b: &[[C64; 2]; 2]) -> f64 {
    let d = b[0][0].re - b[1][1].re;
    d * d + 4.0 * b[0][1].norm_sqr()
}

pub fn as_matrix(b: &[[C64; 2]; 2]) -> CMatrix {
    CMatrix::from_fn(2, 2, |i, j| b[i][j])
}
