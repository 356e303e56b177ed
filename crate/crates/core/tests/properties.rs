use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use spider_core::config::Config;
use spider_core::link::braid::{braid_closure, random_word, reidemeister2, reidemeister3};
use spider_core::link::cable::g3;
use spider_core::link::skein::skein_framed;
use spider_core::qpoly::modp::FpPoly;
use spider_core::qpoly::{LaurentPoly, RatFunc};
use spider_core::rep::{inv_dim, Algebra, Weight};
use spider_core::sl3::reduce::evaluate_closed_randomized;
use spider_core::sl3::evaluate_closed;
use spider_core::theta::admissible;
use spider_core::web::random_closed_web;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    (-6i64..6, prop::collection::vec(-20i64..20, 0..7))
        .prop_map(|(low, c)| LaurentPoly::from_dense(low, c.into_iter().map(BigInt::from).collect()))
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn weight() -> impl Strategy<Value = Weight> {
    (0u32..4, 0u32..4).prop_map(|(a, b)| Weight::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn laurent_text_round_trips(a in poly(), q in any::<bool>()) {
        let back: LaurentPoly = a.render(q).parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn fractions_cancel(a in poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let x = RatFunc::new(a.clone(), b.clone()).unwrap();
        prop_assert_eq!(&x * &RatFunc::from(b.clone()), RatFunc::from(a.clone()));
        let y = RatFunc::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(y, x.clone());
        let back: RatFunc = x.render(false).parse().unwrap();
        prop_assert_eq!(back, x.clone());
    }

    #[test]
    fn canonical_form_matches_field_equality(a in poly(), b in nonzero_poly(), c in poly(), d in nonzero_poly()) {
        let x = RatFunc::new(a, b).unwrap();
        let y = RatFunc::new(c, d).unwrap();
        prop_assert_eq!(x == y, x.field_eq(&y));
        let s = &x + &y;
        prop_assert!((&s - &y).field_eq(&x));
        prop_assert_eq!(&s - &y, x);
    }

    #[test]
    fn factorization_multiplies_back(c in prop::collection::vec(0u64..5, 2..9), p in prop::sample::select(vec![2u64, 3, 5])) {
        let f = FpPoly::new(p, c).monic();
        prop_assume!(!f.is_zero());
        let mut prod = FpPoly::one(p);
        for (g, e) in f.factor() {
            for _ in 0..e {
                prod = prod.mul(&g);
            }
        }
        prop_assert_eq!(prod, f);
    }

    #[test]
    fn closed_evaluation_is_confluent(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let w = random_closed_web(&mut rng, 12);
        let v = evaluate_closed(&w).unwrap();
        prop_assert_eq!(evaluate_closed_randomized(&w, &mut rng), v.clone());
        prop_assert_eq!(v.bar(), v.clone());
        prop_assert_eq!(evaluate_closed(&w.reversed()).unwrap(), v);
    }

    #[test]
    fn trihedron_basis_counts_invariants(x in weight(), y in weight(), z in weight()) {
        let dim = inv_dim(Algebra::Sl3, &[x, y, z]).unwrap();
        prop_assert_eq!(admissible([x, y, z]).map_or(0, |a| a.size() as u64), dim);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn braid_closures_match_skein_and_moves(seed in any::<u64>(), len in 1usize..5) {
        let cfg = Config::default();
        let mut rng = StdRng::seed_from_u64(seed);
        let word = random_word(&mut rng, 3, len);
        let d = braid_closure(3, &word).unwrap();
        let g = g3(&d, &vec![Weight::L1; d.components().len()], &cfg).unwrap();
        prop_assert_eq!(skein_framed(&d), g.clone());
        prop_assert_eq!(skein_framed(&d.mirror()), g.bar());
        let r2 = braid_closure(3, &reidemeister2(&mut rng, 3, &word)).unwrap();
        prop_assert_eq!(skein_framed(&r2), g.clone());
        let (l, r) = reidemeister3(&mut rng, 3, &word);
        let (dl, dr) = (braid_closure(3, &l).unwrap(), braid_closure(3, &r).unwrap());
        prop_assert_eq!(skein_framed(&dl), skein_framed(&dr));
    }
}
