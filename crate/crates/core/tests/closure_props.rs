mod common;

use std::collections::BTreeSet;

use lpa_core::closures::{closure, hs_lattice, is_hereditary, is_saturated, VertexSet};
use lpa_core::Graph;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;

fn to_indices(s: &VertexSet) -> BTreeSet<usize> {
    s.iter().map(|v| v.index()).collect()
}

fn random_subset(g: &Graph, rng: &mut StdRng) -> VertexSet {
    g.vertices().filter(|_| rng.gen_bool(0.3)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The closure is the least hereditary saturated superset; it is
    /// extensive, monotone and idempotent.
    #[test]
    fn closure_is_least_hs_superset(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 7, 12);
        let x = random_subset(&g, &mut rng);
        let y = x.union(&random_subset(&g, &mut rng));
        let cx = closure(&g, &x).closure().clone();
        prop_assert_eq!(to_indices(&cx), closure_oracle(&g, &to_indices(&x)));
        prop_assert!(is_hereditary(&g, &cx) && is_saturated(&g, &cx));
        prop_assert!(x.is_subset(&cx));
        let cy = closure(&g, &y);
        prop_assert!(cx.is_subset(cy.closure()));
        let again = closure(&g, &cx);
        prop_assert_eq!(again.closure(), &cx);
    }

    /// The lattice is exactly the hereditary saturated subsets, and is closed
    /// under intersection.
    #[test]
    fn lattice_matches_subsets(seed in any::<u64>()) {
        let g = random_graph(&mut StdRng::seed_from_u64(seed), 7, 12);
        let lattice = hs_lattice(&g, 20).unwrap();
        let got: BTreeSet<BTreeSet<usize>> = lattice.members.iter().map(to_indices).collect();
        let want: BTreeSet<BTreeSet<usize>> = hs_subsets_oracle(&g).into_iter().collect();
        prop_assert_eq!(&got, &want);
        for a in &lattice.members {
            for b in &lattice.members {
                prop_assert!(lattice.contains(&a.intersection(b)));
            }
        }
        let chain = &lattice.longest_chain;
        prop_assert_eq!(chain.len(), longest_chain_oracle(&want.into_iter().collect::<Vec<_>>()));
        prop_assert!(chain.windows(2).all(|w| w[0].is_subset(&w[1]) && w[0] != w[1]));
    }
}

#[test]
fn levels_ascend_to_a_repeat() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..100 {
        let g = random_graph(&mut rng, 8, 14);
        let x = random_subset(&g, &mut rng);
        let t = closure(&g, &x);
        let n = t.levels.len();
        assert!(n >= 2);
        assert_eq!(t.levels[n - 1], t.levels[n - 2]);
        assert!(t.levels[..n - 1].windows(2).all(|w| w[0].is_subset(&w[1]) && w[0] != w[1]));
    }
}

#[test]
fn vertex_cap_is_enforced() {
    let g = lpa_core::fixtures::line_window(11);
    assert!(hs_lattice(&g, 20).is_err());
}
