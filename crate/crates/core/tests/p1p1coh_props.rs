use plurikit::exactnum::{BiPoly, GaussianRational as G};
use plurikit::p1p1coh::{euler_from_terms, mult_poly, sheaf_cohomology, CohBasis, Resolution};
use plurikit::plurilinear::random_pair;
use proptest::prelude::*;

fn bipoly(k1: usize, k2: usize) -> impl Strategy<Value = BiPoly<G>> {
    prop::collection::vec((-3i64..=3, -3i64..=3), (k1 + 1) * (k2 + 1))
        .prop_map(move |c| BiPoly::from_fn(k1, k2, |i, j| G::from_ints(c[i * (k2 + 1) + j].0, c[i * (k2 + 1) + j].1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiplication_is_functorial(
        (f, g) in (0usize..=2, 0usize..=2, 0usize..=2, 0usize..=2).prop_flat_map(|(a, b, c, d)| (bipoly(a, b), bipoly(c, d))),
        a in -4i64..=2, b in -4i64..=2,
    ) {
        let (gp, gq) = g.bidegree();
        let (fp, fq) = f.bidegree();
        let mid = (a + gp as i64, b + gq as i64);
        let dst = (mid.0 + fp as i64, mid.1 + fq as i64);
        for deg in 0..3 {
            let (s, m, t) = (CohBasis::new(a, b, deg), CohBasis::new(mid.0, mid.1, deg), CohBasis::new(dst.0, dst.1, deg));
            let whole = mult_poly(&f.mul(&g), &s, &t);
            let composed = mult_poly(&f, &m, &t).mul(&mult_poly(&g, &s, &m));
            prop_assert!(whole == composed);
        }
    }

    #[test]
    fn global_sections_and_euler_characteristic(seed in 0u64..10_000, p in -4i64..=4, q in -4i64..=4) {
        let pair = random_pair(2, seed, 0.3).unwrap();
        let res = Resolution::from_pair(&pair).unwrap();
        let c = sheaf_cohomology(&res, 0, 0, 0.0);
        prop_assert_eq!((c.h0, c.h1), (4, 0));
        let c = sheaf_cohomology(&res, p, q, 0.0);
        prop_assert_eq!(c.h0 as i64 - c.h1 as i64, euler_from_terms(2, p, q));
    }
}
