use num_complex::Complex64;
use num_traits::Zero;
use plurikit::curvecoh::{
    connecting, curve_from_poly_with, h_curve, product_rule_defect, random_local_section, riemann_roch, triviality_check,
    CurveOptions, SectionRep,
};
use plurikit::exactnum::{BiPoly, GaussianRational as G, Poly1};
use plurikit::monopole::{axisym_build, massless_build, massless_intersection, symmetric_roots, MasslessPair};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn opts() -> CurveOptions {
    CurveOptions { certify: false, ..Default::default() }
}

fn graph(a: G) -> BiPoly<G> {
    BiPoly::from_table(vec![vec![G::from(0), G::from(1)], vec![-a, G::from(0)]]).unwrap()
}

fn nonzero_gauss() -> impl Strategy<Value = G> {
    (-4i64..=4, -4i64..=4, 1i64..=3).prop_filter("nonzero", |t| t.0 != 0 || t.1 != 0).prop_map(|(a, b, d)| G::from_fracs((a, d), (b, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn riemann_roch_on_generic_curves(k in 1usize..=3, seed in any::<u64>(), a in -5i64..=5, b in -5i64..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = BiPoly::from_fn(k, k, |_, _| G::from_ints(rng.gen_range(-4..=4), rng.gen_range(-4..=4)));
        prop_assume!(!p.is_zero());
        let c = curve_from_poly_with(&p, k, &[], &opts()).unwrap();
        let (h0, h1) = h_curve(&c, a, b);
        prop_assert_eq!(h0 as i64 - h1 as i64, riemann_roch(k, a, b));
    }

    #[test]
    fn lifts_have_no_obstruction(seed in any::<u64>(), a in -3i64..=3, b in -3i64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = BiPoly::from_fn(2, 2, |_, _| G::from_ints(rng.gen_range(-4..=4), rng.gen_range(-4..=4)));
        prop_assume!(!p.is_zero());
        let c = curve_from_poly_with(&p.add(&p.sigma_transform(2).unwrap()), 2, &[], &opts()).unwrap();
        let (basis, m) = connecting(&c, a, b);
        prop_assert_eq!(basis.elements.len(), h_curve(&c, a, b).0);
        prop_assert_eq!(basis.lift_count() + basis.obstruction_count(), basis.elements.len());
        for (col, e) in basis.elements.iter().enumerate() {
            if matches!(e, SectionRep::Lift(_)) {
                prop_assert!(m.column(col).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn product_rule_on_component_curves(
        r1 in nonzero_gauss(), r2 in nonzero_gauss(), seed in any::<u64>(),
        t1 in prop::sample::select(vec![(1i64, 0i64), (0, 1), (2, -2), (1, -1)]),
        t2 in prop::sample::select(vec![(1i64, 0i64), (0, 1), (2, -2), (1, -1)]),
    ) {
        prop_assume!(r1 != r2);
        let comps = vec![graph(r1), graph(r2)];
        let p = comps[0].mul(&comps[1]);
        let c = curve_from_poly_with(&p, 2, &comps, &opts()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_local_section(&c, t1.0, t1.1, &mut rng).unwrap();
        let t = random_local_section(&c, t2.0, t2.1, &mut rng).unwrap();
        // the product's boundary lies in H¹(O(a−2, b−2)); its ζ-direction block is not representable
        let (a, b) = (t1.0 + t2.0 - 2, t1.1 + t2.1 - 2);
        let zeta_block = a <= -2 && b >= 0;
        match product_rule_defect(&c, &s, &t) {
            Ok(d) => prop_assert!(!zeta_block && d == 0.0),
            Err(_) => prop_assert!(zeta_block),
        }
    }

    #[test]
    fn triviality_exactly_when_powers_agree(k in 2usize..=4, two_m in 1u32..=4, rho in 0.5f64..2.0, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = |n: usize| rng.gen_range(0..n);
        let roots = symmetric_roots(k, two_m, rho, &mut pick).unwrap();
        let (mono, curve) = axisym_build(k, two_m, &roots, 1e-8).unwrap();
        for a in 1..=mono.exponent() {
            let pw: Vec<Complex64> = roots.iter().map(|r| r.powi(a as i32)).collect();
            let equal = pw.iter().all(|x| (x - pw[0]).norm() < 1e-8 * pw[0].norm());
            let t = triviality_check(&curve, a).unwrap();
            prop_assert_eq!(t.h0 >= 1, equal, "a = {}", a);
            if equal {
                prop_assert_eq!(t.nowhere_vanishing(), Some(true));
            }
        }
    }

    #[test]
    fn massless_intersections_do_not_depend_on_samples(k in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = loop {
            let mut poly = || Poly1::new((0..=k).map(|_| G::from_ints(rng.gen_range(-3..=3), rng.gen_range(-3..=3))).collect());
            let (p, q) = (poly(), poly());
            if let Ok(m) = MasslessPair::new(k, p, q, 0.0) {
                break m;
            }
        };
        let (data, curve) = massless_build(&pair, &opts()).unwrap();
        prop_assert!(curve.sigma_invariant());
        let mut seen = Vec::new();
        while seen.len() < 5 {
            let mut z = || G::from_fracs((rng.gen_range(-20..=20), 7), (rng.gen_range(-20..=20), 11));
            let (z0, z1) = (z(), z());
            if z0 == z1 {
                continue;
            }
            if let Ok(d) = massless_intersection(&data, &z0, &z1, 0.0) {
                seen.push(d);
            }
        }
        prop_assert!(seen.iter().all(|&d| d == 2 * k - 2), "{:?}", seen);
    }
}
