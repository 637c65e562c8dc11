mod common;

use lpa_core::algebra::Strategy;
use lpa_core::Field;
use lpa_core::Algebra;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Normal forms do not depend on the order redexes are contracted in.
    #[test]
    fn rewriting_is_confluent(seed in any::<u64>(), pick in 0usize..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (_, g) = &named_fixtures()[pick];
        let alg = rational(g);
        let raw = random_raw(&alg, &mut rng, 4, 7);
        let fast = alg.normal_form(&raw);
        for s in [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(seed)] {
            prop_assert_eq!(&alg.normal_form_with(&raw, s), &fast);
        }
        for m in fast.monomials() {
            prop_assert!(m.is_normal(g));
        }
    }

    /// Multiplication of normal forms agrees with rewriting the concatenated
    /// words, and the involution reverses products.
    #[test]
    fn products_and_star(seed in any::<u64>(), pick in 0usize..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (_, g) = &named_fixtures()[pick];
        let alg = Algebra::new(g, Field::prime(7).unwrap());
        let a = random_raw(&alg, &mut rng, 3, 4);
        let b = random_raw(&alg, &mut rng, 3, 4);
        let (x, y) = (alg.normal_form(&a), alg.normal_form(&b));
        prop_assert_eq!(alg.mul(&x, &y), alg.normal_form_with(&a.mul(&b), Strategy::Rightmost));
        prop_assert_eq!(alg.star(&alg.mul(&x, &y)), alg.mul(&alg.star(&y), &alg.star(&x)));
        prop_assert_eq!(alg.star(&alg.star(&x)), x.clone());
        prop_assert_eq!(alg.normal_form(&a.star()), alg.star(&x));
    }
}

#[test]
fn peirce_parts_sum_back() {
    let mut rng = StdRng::seed_from_u64(11);
    for (_, g) in named_fixtures() {
        let alg = rational(&g);
        for _ in 0..50 {
            let x = alg.normal_form(&random_raw(&alg, &mut rng, 4, 5));
            let parts = alg.peirce_split(&x);
            let sum = parts.iter().fold(lpa_core::Element::zero(), |acc, p| acc.add(p));
            assert_eq!(sum, x);
            for p in &parts {
                let m = p.monomials().next().unwrap();
                let (u, w) = (alg.vertex(m.source()), alg.vertex(m.range()));
                assert_eq!(&alg.product(&[&u, p, &w]), p);
            }
        }
    }
}
