use num_traits::{One, Zero};
use plurikit::exactnum::{rref_nullspace, BiPoly, GaussianRational as G, Matrix, PolyMatrix};
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = G> {
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| G::from_ints(a, b))
}

fn bipoly(k1: usize, k2: usize) -> impl Strategy<Value = BiPoly<G>> {
    prop::collection::vec(gauss(), (k1 + 1) * (k2 + 1)).prop_map(move |c| BiPoly::from_fn(k1, k2, |i, j| c[i * (k2 + 1) + j].clone()))
}

fn cofactor_det(m: &[Vec<BiPoly<G>>]) -> BiPoly<G> {
    let n = m.len();
    if n == 0 {
        return BiPoly::constant(G::one());
    }
    let mut acc = BiPoly::zero();
    for c in 0..n {
        let minor: Vec<Vec<_>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
        let term = m[0][c].mul(&cofactor_det(&minor));
        acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sigma_is_an_involution_up_to_unit(k in 1usize..=3, seed in any::<u64>()) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let p = BiPoly::from_fn(k, k, |_, _| G::from_ints(rand::Rng::gen_range(&mut rng, -3..=3), rand::Rng::gen_range(&mut rng, -3..=3)));
        prop_assume!(!p.is_zero());
        let twice = p.sigma_transform(k).unwrap().sigma_transform(k).unwrap();
        let u = twice.ratio_to(&p).expect("proportional");
        prop_assert!(u.norm_sq().is_one());
    }

    #[test]
    fn squarefree_part_is_multiplicative(a in bipoly(1, 1), b in bipoly(1, 0), c in bipoly(0, 1)) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let p = a.mul(&a).mul(&b);
        let q = c;
        prop_assume!(BiPoly::gcd(&p, &q).degrees() == (0, 0));
        let lhs = p.mul(&q).squarefree_part().unwrap();
        let rhs = p.squarefree_part().unwrap().mul(&q.squarefree_part().unwrap());
        prop_assert!(lhs.ratio_to(&rhs).is_some());
    }

    #[test]
    fn nullspace_is_deterministic(rows in prop::collection::vec(prop::collection::vec(gauss(), 5), 1..4)) {
        let mut rows = rows;
        let dup = rows[0].clone();
        rows.push(dup);
        let m = Matrix::from_rows(rows).unwrap();
        let (r1, n1) = rref_nullspace(&m, 0.0);
        let (r2, n2) = rref_nullspace(&m, 0.0);
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(&n1, &n2);
        prop_assert_eq!(r1 + n1.len(), 5);
        for v in &n1 {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn determinant_matches_cofactor_expansion(n in 1usize..=4, entries in prop::collection::vec(bipoly(1, 1), 16)) {
        let rows: Vec<Vec<_>> = (0..n).map(|r| (0..n).map(|c| entries[r * 4 + c].clone()).collect()).collect();
        let pm = PolyMatrix::new(rows.clone(), vec![(1, 1); n]).unwrap();
        prop_assert!(pm.det().unwrap() == cofactor_det(&rows));
    }
}
