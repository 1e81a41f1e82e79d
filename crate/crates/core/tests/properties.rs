mod oracle;

use proptest::prelude::*;
use zc_core::detect::{
    mixed_concurrence_full, mixed_concurrence_reduced, ppt_test, psd_test_registry,
};
use zc_core::io::{parse_state, to_json, StateFile};
use zc_core::matops::{
    basis, herm_eig, j_matrix, kron, partial_transpose_a, psd_sqrt, CMatrix, C64,
};
use zc_core::rng;
use zc_core::states::{
    canonicalize, random_local_unitaries, random_rank_two, random_separable, Canonicalized,
};
use zc_core::symmetries::{
    conjugation_from_params, random_conjugation, random_special_unitary, CartanParams,
    Conjugation,
};

fn random_matrix(seed: u64, n: usize) -> CMatrix {
    let mut r = rng::seeded(seed);
    CMatrix::from_fn(n, n, |_, _| rng::complex_gaussian(&mut r))
}

fn random_hermitian(seed: u64, n: usize) -> CMatrix {
    let g = random_matrix(seed, n);
    &g + &g.adjoint()
}

fn random_psd(seed: u64, n: usize, rank: usize) -> CMatrix {
    let mut r = rng::seeded(seed);
    let g = CMatrix::from_fn(n, rank, |_, _| rng::complex_gaussian(&mut r));
    &g * &g.adjoint()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eigendecomposition_reassembles(seed in any::<u64>(), n in 1usize..=8) {
        let h = random_hermitian(seed, n);
        let eig = herm_eig(&h).unwrap();
        prop_assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(eig.reassemble(|l| l).approx_eq(&h, 1e-10 * (1.0 + h.max_abs())));
        prop_assert!(eig.vectors.is_unitary(1e-10));
    }

    #[test]
    fn psd_sqrt_squares_back(seed in any::<u64>(), n in 1usize..=8, rank in 1usize..=8) {
        let p = random_psd(seed, n, rank.min(n));
        let r = psd_sqrt(&p).unwrap();
        prop_assert!(r.is_hermitian(1e-12));
        prop_assert!((&r * &r).approx_eq(&p, 1e-9 * (1.0 + p.max_abs())));
    }

    #[test]
    fn partial_transpose_is_involutive(seed in any::<u64>(), n_b in 1usize..=4) {
        let h = random_hermitian(seed, 2 * n_b);
        let pt = partial_transpose_a(&h, 2, n_b).unwrap();
        prop_assert_eq!(pt.trace(), h.trace());
        prop_assert!(pt.is_hermitian(0.0));
        prop_assert!(partial_transpose_a(&pt, 2, n_b).unwrap().approx_eq(&h, 0.0));
        let a = random_hermitian(seed ^ 1, 2);
        let b = random_hermitian(seed ^ 2, n_b);
        let product = partial_transpose_a(&kron(&a, &b), 2, n_b).unwrap();
        prop_assert!(product.approx_eq(&kron(&a.transpose(), &b), 1e-14));
    }

    #[test]
    fn su2_preserves_j2(seed in any::<u64>()) {
        let t = random_special_unitary(&mut rng::seeded(seed), 2);
        let j = j_matrix(1);
        prop_assert!((&(&t * &j) * &t.transpose()).approx_eq(&j, 1e-12));
    }

    #[test]
    fn closed_form_matches_exponential(seed in any::<u64>()) {
        let p = CartanParams::random(&mut rng::seeded(seed));
        let m = conjugation_from_params(&p);
        prop_assert!(m.matrix().max_abs_diff(&oracle::conjugation_via_expm(&p)) < 1e-10);
    }

    #[test]
    fn conjugations_square_to_identity(seed in any::<u64>()) {
        let mut r = rng::seeded(seed);
        for m in [random_conjugation(&mut r), conjugation_from_params(&CartanParams::random(&mut r))] {
            let mat = m.matrix();
            prop_assert!((mat * &mat.conj()).approx_eq(&CMatrix::identity(8), 1e-10));
            prop_assert!(mat.is_unitary(1e-10));
            prop_assert!(mat.is_symmetric(1e-10));
            prop_assert!(m.has_tensor_form(1e-10));
        }
    }

    #[test]
    fn reduced_path_matches_oracle_and_full(seed in any::<u64>()) {
        let mut r = rng::seeded(seed);
        let s = random_rank_two(&mut r);
        let m = random_conjugation(&mut r);
        let (reduced, _) = mixed_concurrence_reduced(&s, &m).unwrap();
        let (full, _) = mixed_concurrence_full(&s.density(), &m).unwrap();
        let reference = oracle::rank_two_concurrence(&s, m.matrix());
        prop_assert!((reduced - reference).abs() < 1e-10, "{} vs {}", reduced, reference);
        prop_assert!((full - reference).abs() < 1e-8, "{} vs {}", full, reference);
    }

    #[test]
    fn separable_states_have_zero_concurrence(seed in any::<u64>(), terms in 1usize..=5) {
        let mut r = rng::seeded(seed);
        let (rho, _) = random_separable(&mut r, terms, 4).unwrap();
        prop_assert!(ppt_test(&rho).unwrap().0);
        for _ in 0..5 {
            let (c, _) = mixed_concurrence_full(&rho, &random_conjugation(&mut r)).unwrap();
            prop_assert!(c <= 1e-8, "{}", c);
        }
    }

    #[test]
    fn canonical_form_round_trips(seed in any::<u64>()) {
        let s = random_rank_two(&mut rng::seeded(seed));
        match canonicalize(&s).unwrap() {
            Canonicalized::Canonical(cf) => {
                prop_assert!(cf.residual(&s) <= 1e-8);
                prop_assert!(cf.check_invariants().is_ok());
                prop_assert!(cf.x1.is_unitary(1e-10) && cf.x2.is_unitary(1e-10));
            }
            Canonicalized::BothSeparable => prop_assert!(false, "generic state with product eigenvectors"),
        }
    }

    #[test]
    fn local_unitaries_preserve_invariants(seed in any::<u64>()) {
        let mut r = rng::seeded(seed);
        let s = random_rank_two(&mut r);
        let (x1, x2) = random_local_unitaries(&mut r);
        let moved = s.local_transform(&x1, &x2).unwrap();
        let (ppt0, min0) = ppt_test(&s.density()).unwrap();
        let (ppt1, min1) = ppt_test(&moved.density()).unwrap();
        prop_assert_eq!(ppt0, ppt1);
        prop_assert!((min0 - min1).abs() < 1e-10);

        let m = random_conjugation(&mut r);
        let x = kron(&x1, &x2);
        let pulled = Conjugation::new(&(&x.adjoint() * m.matrix()) * &x.conj()).unwrap();
        let (c_moved, _) = mixed_concurrence_reduced(&moved, &m).unwrap();
        let (c_pulled, _) = mixed_concurrence_reduced(&s, &pulled).unwrap();
        prop_assert!((c_moved - c_pulled).abs() < 1e-8);
    }

    #[test]
    fn psd_strategies_agree(seed in any::<u64>(), n in 1usize..=6, indefinite in any::<bool>()) {
        let h = if indefinite {
            let shift = CMatrix::from_fn(n, n, |i, j| if i == j && i == 0 { C64::from(-1.0) } else { C64::from(0.0) });
            &random_psd(seed, n, n) + &shift.scale_real(100.0)
        } else {
            random_psd(seed, n, n)
        };
        let reg = psd_test_registry();
        let eigen = reg.get("eigen").unwrap().is_psd(&h).unwrap();
        let sylvester = reg.get("sylvester").unwrap().is_psd(&h).unwrap();
        prop_assert_eq!(eigen, sylvester);
        prop_assert_eq!(eigen, !indefinite);
    }

    #[test]
    fn state_files_round_trip(seed in any::<u64>()) {
        let s = random_rank_two(&mut rng::seeded(seed));
        let back = parse_state(&to_json(&StateFile::from_rank_two(&s)).unwrap()).unwrap();
        prop_assert_eq!(back.rank_two.unwrap(), s);
    }
}

#[test]
fn j_products_permute_basis() {
    let j = kron(&j_matrix(1), &j_matrix(2));
    for k in 0..8 {
        let image = j.mul_vec(&basis(8, k)).unwrap();
        let target = k ^ 6;
        assert!((image[target].norm() - 1.0).abs() < 1e-15);
        assert!((image.norm() - 1.0).abs() < 1e-15);
    }
    for half in 1..=3 {
        let j = j_matrix(half);
        assert!((&j * &j).approx_eq(&CMatrix::identity(2 * half).scale_real(-1.0), 0.0));
        assert!(j.is_antisymmetric(0.0));
    }
}

#[test]
fn expm_oracle_sanity() {
    let x = CMatrix::from_fn(2, 2, |i, j| if i != j { C64::from(if i < j { 1.0 } else { -1.0 }) } else { C64::from(0.0) });
    let theta = 0.7;
    let r = oracle::expm(&x.scale_real(theta));
    assert!((r[(0, 0)].re - theta.cos()).abs() < 1e-15);
    assert!((r[(0, 1)].re - theta.sin()).abs() < 1e-15);
    let big = oracle::expm(&x.scale_real(40.0));
    assert!(big.is_unitary(1e-12));
}
