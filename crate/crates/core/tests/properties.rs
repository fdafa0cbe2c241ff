use mcred::catalog;
use mcred::graded::{koszul_sign, ChainComplex};
use mcred::hamiltonian::{poisson_bracket, Polynomial};
use mcred::maurer_cartan::{check_equivariance, check_moment_identity, Sampling};
use mcred::reduction::{certify_symplectic, check_self_duality, tangent_complex};
use mcred::{GradedVector, Matrix, Parity, Rational, Scalar};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn polynomial() -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3), 0..4).prop_map(|terms| {
        Polynomial::from_terms(2, terms.into_iter().map(|(c, a, b)| (q(c), vec![a, b]))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn koszul_sign_is_multiplicative(
        (sigma, tau) in (1usize..7).prop_flat_map(|n| (permutation(n), permutation(n))),
        odd in prop::collection::vec(any::<bool>(), 7),
    ) {
        let n = sigma.len();
        let par: Vec<Parity> = odd[..n].iter().map(|&o| if o { Parity::Odd } else { Parity::Even }).collect();
        let mut moved = par.clone();
        for i in 0..n {
            moved[sigma[i]] = par[i];
        }
        let composite: Vec<usize> = (0..n).map(|i| tau[sigma[i]]).collect();
        prop_assert_eq!(
            koszul_sign(&composite, &par).unwrap(),
            koszul_sign(&sigma, &par).unwrap() * koszul_sign(&tau, &moved).unwrap()
        );
    }

    #[test]
    fn cohomology_is_invariant_under_change_of_basis(
        alpha in -3i64..=3,
        entries in prop::collection::vec(-2i64..=2, 4),
    ) {
        let g = catalog::ho1_dgla();
        let x = GradedVector::from_labels(g.space(), [("q", q(alpha))]).unwrap();
        let t = tangent_complex(&g, &x).unwrap();
        let m = Matrix::from_rows(vec![vec![q(entries[0]), q(entries[1])], vec![q(entries[2]), q(entries[3])]]).unwrap();
        let Some(minv) = m.inverse() else { return Ok(()) };
        let a = m.mul(&t.action).unwrap();
        let p = t.differential.mul(&minv).unwrap();
        let c = ChainComplex::new(-1, t.complex.dims().to_vec(), vec![a, p]).unwrap();
        prop_assert_eq!(c.cohomology_dims().unwrap(), t.complex.cohomology_dims().unwrap());
    }

    #[test]
    fn fibre_points_of_ho1_are_self_dual(alpha in -4i64..=4, beta in -4i64..=4, on_q in any::<bool>()) {
        let g = catalog::ho1_dgla();
        let x = if on_q {
            GradedVector::from_labels(g.space(), [("q", q(alpha))]).unwrap()
        } else {
            GradedVector::from_labels(g.space(), [("p", q(beta))]).unwrap()
        };
        let t = tangent_complex(&g, &x).unwrap();
        prop_assert!(check_self_duality(&g, &t).unwrap().all_passed());
        let h = t.cohomology_dims().unwrap();
        prop_assert_eq!(h[0], h[2]);
        prop_assert!(t.euler_characteristic_holds().unwrap());
        prop_assert!(certify_symplectic(&g, &t).unwrap().is_certified());
    }

    #[test]
    fn poisson_bracket_is_a_lie_bracket_and_derivation(f in polynomial(), g in polynomial(), h in polynomial()) {
        let s = catalog::ho1_system();
        let v = s.symplectic();
        let pb = |a: &Polynomial<Rational>, b: &Polynomial<Rational>| poisson_bracket(v, a, b);
        prop_assert_eq!(pb(&f, &g), pb(&g, &f).neg());
        let jacobi = pb(&f, &pb(&g, &h)).add(&pb(&g, &pb(&h, &f))).add(&pb(&h, &pb(&f, &g)));
        prop_assert!(jacobi.is_zero());
        prop_assert_eq!(pb(&f, &g.mul(&h)), pb(&f, &g).mul(&h).add(&g.mul(&pb(&f, &h))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn moment_identity_and_equivariance_hold_for_any_seed(seed in any::<u64>()) {
        let sampling = Sampling { seed, random_points: 5 };
        for g in [catalog::a1(), catalog::n1()] {
            prop_assert!(check_moment_identity(&g, sampling).unwrap().all_passed());
            prop_assert!(check_equivariance(&g, sampling).all_passed());
        }
        let l = catalog::sl2q_linfty();
        prop_assert!(check_moment_identity(&l, sampling).unwrap().all_passed());
        prop_assert!(check_equivariance(&l, sampling).all_passed());
    }
}
