use plurikit::exactnum::{BiPoly, GaussianRational as G, Matrix, ProjPoint};
use plurikit::plurilinear::random::random_candidate;
use plurikit::plurilinear::{
    char_poly, extension_j, is_hypercomplex, j_at, random_pair, sigma_ratio, splitting_profile, validate, PluriPair,
    Status, ValidateOptions,
};
use proptest::prelude::*;
use rand::SeedableRng;

fn point() -> impl Strategy<Value = G> {
    (-9i64..=9, -9i64..=9, 1i64..=5).prop_map(|(a, b, d)| G::from_fracs((a, d), (b, d)))
}

fn pair(seed: u64) -> PluriPair<G> {
    random_pair(2, seed, 0.3).expect("certified pair")
}

fn diagonal() -> BiPoly<G> {
    BiPoly::from_table(vec![vec![G::from(0), G::from(-1)], vec![G::from(1), G::from(0)]]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn structures_square_to_minus_one_and_are_real(seed in 0u64..10_000, z in point()) {
        let p = pair(seed);
        let j = j_at(&p, &ProjPoint::Finite(z)).unwrap();
        prop_assert!(j.square_defect().is_zero());
        prop_assert!(j.reality_defect().is_zero());
    }

    #[test]
    fn frames_at_distinct_points_are_transverse(seed in 0u64..10_000, z in point(), w in point()) {
        prop_assume!(z != w);
        let p = pair(seed);
        let a = p.frame(&ProjPoint::Finite(z));
        let b = p.frame(&ProjPoint::Finite(w));
        prop_assert_eq!(a.intersect_columns(&b, 0.0).cols(), 0);
    }

    #[test]
    fn characteristic_polynomial_is_sigma_invariant(seed in 0u64..10_000) {
        let cp = char_poly(&pair(seed));
        let k = cp.bidegree().0;
        prop_assert!(sigma_ratio(&cp, k, 0.0).is_some());
    }

    #[test]
    fn extension_flips_at_the_antipode(seed in 0u64..10_000, z in point()) {
        let p = pair(seed);
        let z = ProjPoint::Finite(z);
        let j = extension_j(&p, &z).unwrap();
        let ja = extension_j(&p, &z.antipode()).unwrap();
        prop_assert!(ja == j.neg());
        let i = Matrix::scalar(j.rows(), G::i());
        prop_assert!(j.mul(&i) == i.mul(&j));
    }

    #[test]
    fn hypercomplex_test_agrees_with_the_diagonal(seed in 0u64..10_000) {
        for p in [pair(seed), PluriPair::standard_hypercomplex(2).unwrap()] {
            let sf = char_poly(&p).squarefree_part().unwrap();
            prop_assert_eq!(is_hypercomplex(&p), sf.ratio_to(&diagonal()).is_some());
        }
    }

    #[test]
    fn pencils_split_into_degree_one(seed in 0u64..10_000) {
        let p = pair(seed);
        let prof = splitting_profile(&p.pencil(), 3, seed, 0.0).unwrap();
        prop_assert_eq!(prof.degrees, vec![1; p.n()]);
    }

    #[test]
    fn odd_dimensions_never_certify(n in prop::sample::select(vec![1usize, 3]), scale in prop::sample::select(vec![0.1, 1.0, 3.0]), seed in any::<u64>()) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cand = random_candidate(n, &mut rng, scale);
        prop_assert_ne!(validate(&cand, &ValidateOptions::default()).status, Status::Certified);
    }
}
