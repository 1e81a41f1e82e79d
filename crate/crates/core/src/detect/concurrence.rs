use crate::error::{Error, Result};
use crate::matops::{herm_eig, inner, psd_sqrt, singular_values, CMatrix, CVector, C64};
use crate::states::{DensityMatrix, RankTwoState};
use crate::symmetries::{apply_conjugation, Conjugation};
use crate::tol;

/// Equality tolerance for the two conditions on `(alpha, beta, gamma, lambda)`.
pub const CONDITION_TOL: f64 = 1e-9;
/// Threshold on `(tr B)^2 - 4 det B` below which the eigenvalues of `B` coincide.
pub const GAP_TOL: f64 = 1e-8;

/// `|<psi| Theta |psi>| = |psi^dagger M psi-bar|`.
pub fn pure_concurrence(psi: &CVector, m: &Conjugation) -> Result<f64> {
    let theta = apply_conjugation(m, psi)?;
    Ok(inner(psi, &theta).norm())
}

/// Closed-form mixed-state concurrence `max{0, sqrt(l_max) - sum_j sqrt(l_j)}`
/// over the eigenvalues `l` of `K = rho^1/2 theta(rho) rho^1/2`.
///
/// `K = F F^dagger` with `F = rho^1/2 M conj(rho^1/2)`, so the square roots
/// of its eigenvalues are taken as singular values of `F`. Nearly pure states
/// (second eigenvalue below the rank tolerance) use the pure formula on the
/// leading eigenvector. Returns the value and the eigenvalues of `K`.
pub fn mixed_concurrence_full(rho: &DensityMatrix, m: &Conjugation) -> Result<(f64, Vec<f64>)> {
    let n = rho.dim();
    if m.dim() != n {
        return Err(Error::dims(format!("{n}x{n} conjugation"), m.dim()));
    }
    let eig = rho.eigen()?;
    if eig.values.get(1).is_none_or(|&l| l < tol::RANK) {
        let c = pure_concurrence(&eig.vectors.column(0), m)? * eig.values[0];
        let mut eigs = vec![0.0; n];
        eigs[0] = c * c;
        return Ok((c, eigs));
    }
    let root = psd_sqrt(rho.matrix())?;
    let f = &(&root * m.matrix()) * &root.conj();
    let sv = singular_values(&f)?;
    let value = (sv[0] - sv[1..].iter().sum::<f64>()).max(0.0);
    Ok((value, sv.iter().map(|s| s * s).collect()))
}

/// Two-qubit concurrence with the spin flip `J2 (x) J2`.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if (rho.n_a(), rho.n_b()) != (2, 2) {
        return Err(Error::UnsupportedShape {
            n_a: rho.n_a(),
            n_b: rho.n_b(),
        });
    }
    Ok(mixed_concurrence_full(rho, &Conjugation::spin_flip())?.0)
}

/// `C = [[alpha, beta], [beta, gamma]]` and `Lambda = diag(lambda, 1 - lambda)`
/// for a rank-2 state; the nonzero spectrum of `rho^1/2 theta(rho) rho^1/2`
/// is that of `B = sqrt(Lambda) C Lambda C^dagger sqrt(Lambda)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReducedConcurrenceData {
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub lambda: f64,
}

impl ReducedConcurrenceData {
    pub fn new(alpha: C64, beta: C64, gamma: C64, lambda: f64) -> Self {
        Self {
            alpha,
            beta,
            gamma,
            lambda,
        }
    }

    /// `alpha = <psi1|M|psi1-bar>`, `beta = <psi1|M|psi2-bar>`, `gamma = <psi2|M|psi2-bar>`.
    pub fn from_state(s: &RankTwoState, m: &Conjugation) -> Result<Self> {
        let t1 = apply_conjugation(m, s.psi1())?;
        let t2 = apply_conjugation(m, s.psi2())?;
        Ok(Self::new(
            inner(s.psi1(), &t1),
            inner(s.psi1(), &t2),
            inner(s.psi2(), &t2),
            s.lambda(),
        ))
    }

    pub fn c_matrix(&self) -> CMatrix {
        CMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => self.alpha,
            (1, 1) => self.gamma,
            _ => self.beta,
        })
    }

    pub fn b_matrix(&self) -> CMatrix {
        let l = [self.lambda, 1.0 - self.lambda];
        let sq = CMatrix::from_real_diagonal(&[l[0].sqrt(), l[1].sqrt()]);
        let c = self.c_matrix();
        &(&(&(&sq * &c) * &CMatrix::from_real_diagonal(&l)) * &c.adjoint()) * &sq
    }

    /// `(tr B)^2 - 4 det B` from the explicit entries of `B`.
    pub fn gap_symbolic(&self) -> f64 {
        let b = self.b_matrix();
        let tr = b[(0, 0)].re + b[(1, 1)].re;
        let det = b[(0, 0)].re * b[(1, 1)].re - b[(0, 1)].norm_sqr();
        tr * tr - 4.0 * det
    }

    /// `(l_max - l_min)^2` from a numerical eigensolve of `B`.
    pub fn gap_eigen(&self) -> Result<f64> {
        let eig = herm_eig(&self.b_matrix())?;
        Ok((eig.max() - eig.min()).powi(2))
    }

    /// `sqrt(l_max(B)) - sqrt(l_min(B))`, evaluated without cancellation.
    ///
    /// With `z = alpha gamma conj(beta)^2` the squared value is
    /// `(l|alpha| - (1-l)|gamma|)^2 + 4 l (1-l) (|z| + Re z) / (|alpha gamma| + |beta|^2 + |alpha gamma - beta^2|)`.
    pub fn concurrence(&self) -> f64 {
        let l = self.lambda;
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        let z = a * g * b.conj() * b.conj();
        let zn = z.norm();
        let positive_part = if z.re >= 0.0 {
            zn + z.re
        } else if zn - z.re > 0.0 {
            z.im * z.im / (zn - z.re)
        } else {
            0.0
        };
        let den = (a * g).norm() + b.norm_sqr() + (a * g - b * b).norm();
        let cross = if den > 0.0 { positive_part / den } else { 0.0 };
        let diff = l * a.norm() - (1.0 - l) * g.norm();
        (diff * diff + 4.0 * l * (1.0 - l) * cross).max(0.0).sqrt()
    }
}

/// Concurrence of a rank-2 state through its 2x2 data.
pub fn mixed_concurrence_reduced(
    s: &RankTwoState,
    m: &Conjugation,
) -> Result<(f64, ReducedConcurrenceData)> {
    let data = ReducedConcurrenceData::from_state(s, m)?;
    Ok((data.concurrence(), data))
}

/// The two conditions under which `B` has a double eigenvalue:
/// (i) `lambda |alpha| = (1 - lambda) |gamma|` and
/// (ii) `alpha gamma conj(beta)^2` is real and non-positive.
pub fn equal_eigenvalue_conditions(d: &ReducedConcurrenceData) -> (bool, bool) {
    let l = d.lambda;
    let cond_i = (l * d.alpha.norm() - (1.0 - l) * d.gamma.norm()).abs() <= CONDITION_TOL;
    let z = d.alpha * d.gamma * d.beta.conj() * d.beta.conj();
    let cond_ii = z.re <= CONDITION_TOL && z.im.abs() <= CONDITION_TOL;
    (cond_i, cond_ii)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matops::{basis, kron_vec, I, ONE, ZERO};
    use crate::rng;
    use crate::states::{make_zce, random_rank_two};
    use crate::symmetries::random_conjugation;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn equal_eigenvalue_examples() {
        let d = ReducedConcurrenceData::new(ONE, I, ONE, 0.5);
        assert_eq!(equal_eigenvalue_conditions(&d), (true, true));
        let eig = herm_eig(&d.b_matrix()).unwrap();
        assert!((eig.values[0] - 0.5).abs() < 1e-12 && (eig.values[1] - 0.5).abs() < 1e-12);
        assert!(d.concurrence() < 1e-12);

        let d = ReducedConcurrenceData::new(ONE, ZERO, ZERO, 0.5);
        assert!(!equal_eigenvalue_conditions(&d).0);
        assert!(d.b_matrix().approx_eq(&CMatrix::from_real_diagonal(&[0.25, 0.0]), 1e-15));
        assert!((d.concurrence() - 0.5).abs() < 1e-15);

        let d = ReducedConcurrenceData::new(ZERO, ZERO, ZERO, 0.3);
        assert_eq!(equal_eigenvalue_conditions(&d), (true, true));
        assert_eq!(d.gap_symbolic(), 0.0);
    }

    #[test]
    fn stable_value_matches_eigenvalues() {
        let mut r = rng::seeded(5);
        for _ in 0..200 {
            let d = ReducedConcurrenceData::new(
                rng::complex_gaussian(&mut r),
                rng::complex_gaussian(&mut r),
                rng::complex_gaussian(&mut r),
                0.05 + 0.9 * rng::complex_gaussian(&mut r).norm().min(1.0),
            );
            let eig = herm_eig(&d.b_matrix()).unwrap();
            let direct = eig.max().sqrt() - eig.min().max(0.0).sqrt();
            assert!((d.concurrence() - direct).abs() < 1e-10);
        }
    }

    #[test]
    fn pure_examples() {
        let m = Conjugation::standard();
        let psi = kron_vec(&basis(2, 1), &basis(4, 2));
        assert!(pure_concurrence(&psi, &m).unwrap() < 1e-15);

        // J2 (x) J4 sends e0 to e6 and e5 to -e3, so the Bell-like state
        // (e0 + e5)/sqrt2 has zero overlap with its image
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = (basis(8, 0) + basis(8, 5)) * C64::from(h);
        assert!(pure_concurrence(&bell, &m).unwrap() < 1e-15);
        // (e0 + e6)/sqrt2 maps to itself
        let fixed = (basis(8, 0) + basis(8, 6)) * C64::from(h);
        assert!((pure_concurrence(&fixed, &m).unwrap() - 1.0).abs() < 1e-15);
        let phased = &fixed * c(0.6, 0.8);
        assert!((pure_concurrence(&phased, &m).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn wootters_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = (basis(4, 0) + basis(4, 3)) * C64::from(h);
        let rho = DensityMatrix::pure(2, 2, &bell).unwrap();
        assert!((wootters_concurrence(&rho).unwrap() - 1.0).abs() < 1e-9);
        let mixed = DensityMatrix::new(2, 2, CMatrix::identity(4).scale_real(0.25)).unwrap();
        assert!(wootters_concurrence(&mixed).unwrap() < 1e-12);
        let product = DensityMatrix::pure(2, 2, &basis(4, 1)).unwrap();
        assert!(wootters_concurrence(&product).unwrap() < 1e-12);
        let werner = DensityMatrix::new(
            2,
            2,
            &CMatrix::outer(&bell).scale_real(0.7) + &CMatrix::identity(4).scale_real(0.075),
        )
        .unwrap();
        // (3p - 1)/2 for a Werner state of weight p
        assert!((wootters_concurrence(&werner).unwrap() - 0.55).abs() < 1e-9);
    }

    #[test]
    fn reduced_matches_full() {
        let mut r = rng::seeded(11);
        for _ in 0..100 {
            let s = random_rank_two(&mut r);
            let m = random_conjugation(&mut r);
            let (reduced, _) = mixed_concurrence_reduced(&s, &m).unwrap();
            let (full, eigs) = mixed_concurrence_full(&s.density(), &m).unwrap();
            assert!((reduced - full).abs() < 1e-8, "{reduced} vs {full}");
            assert!(eigs.iter().skip(2).all(|&e| e.abs() < 1e-9));
        }
    }

    #[test]
    fn pure_state_uses_fallback() {
        let mut r = rng::seeded(2);
        let psi = rng::random_unit_vector(&mut r, 8);
        let m = random_conjugation(&mut r);
        let rho = DensityMatrix::pure(2, 4, &psi).unwrap();
        let (full, _) = mixed_concurrence_full(&rho, &m).unwrap();
        assert!((full - pure_concurrence(&psi, &m).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn zce_has_double_eigenvalue() {
        let mut r = rng::seeded(13);
        let s = make_zce(0.35, 0.9).unwrap();
        for _ in 0..50 {
            let m = random_conjugation(&mut r);
            let (value, data) = mixed_concurrence_reduced(&s, &m).unwrap();
            assert!(value < 1e-8);
            assert!(data.gap_symbolic() < 1e-8);
            assert_eq!(equal_eigenvalue_conditions(&data), (true, true));
        }
    }
}
