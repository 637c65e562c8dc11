//! Seeded generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use lpa_core::algebra::{Algebra, RawElement, Symbol};
use lpa_core::graph::{EdgeSpec, Graph, GraphSpec, VertexId};
use lpa_core::{fixtures, Field};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn named_fixtures() -> Vec<(&'static str, Graph)> {
    fixtures::NAMED
        .iter()
        .map(|n| (*n, fixtures::by_name(n).unwrap()))
        .collect()
}

/// A graph on `n` vertices `x0…` with `m` edges `y0…` between random endpoints.
pub fn random_graph(rng: &mut StdRng, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let spec = GraphSpec {
        vertices: (0..n).map(|i| format!("x{i}")).collect(),
        edges: (0..m)
            .map(|j| {
                let s = rng.gen_range(0..n);
                let d = rng.gen_range(0..n);
                EdgeSpec::new(&format!("y{j:02}"), &format!("x{s}"), &format!("x{d}"))
            })
            .collect(),
    };
    Graph::from_spec(&spec).unwrap()
}

fn ends(g: &Graph, s: Symbol) -> (VertexId, VertexId) {
    match s {
        Symbol::Vertex(v) => (v, v),
        Symbol::Edge(e) => (g.source(e), g.range(e)),
        Symbol::Ghost(e) => (g.range(e), g.source(e)),
    }
}

pub fn all_symbols(g: &Graph) -> Vec<Symbol> {
    g.vertices()
        .map(Symbol::Vertex)
        .chain(g.edges().map(Symbol::Edge))
        .chain(g.edges().map(Symbol::Ghost))
        .collect()
}

/// Mostly composable words of length `0..=max_len`; one step in ten is a
/// uniformly random symbol so zero products also occur.
pub fn random_word(g: &Graph, rng: &mut StdRng, max_len: usize) -> Vec<Symbol> {
    let symbols = all_symbols(g);
    let len = rng.gen_range(0..=max_len);
    let mut word: Vec<Symbol> = Vec::with_capacity(len);
    for _ in 0..len {
        let next = match word.last() {
            Some(&last) if rng.gen_bool(0.9) => {
                let at = ends(g, last).1;
                let fits: Vec<Symbol> = symbols.iter().copied().filter(|&s| ends(g, s).0 == at).collect();
                *fits.choose(rng).unwrap()
            }
            _ => *symbols.choose(rng).unwrap(),
        };
        word.push(next);
    }
    word
}

pub fn random_raw(alg: &Algebra<'_>, rng: &mut StdRng, max_terms: usize, max_len: usize) -> RawElement {
    let g = alg.graph();
    let terms = rng.gen_range(1..=max_terms);
    let mut raw = RawElement::default();
    for _ in 0..terms {
        let c = alg.scalar(rng.gen_range(-3..=3));
        raw = raw.add(RawElement::word(c, random_word(g, rng, max_len)));
    }
    raw
}

pub fn rational(g: &Graph) -> Algebra<'_> {
    Algebra::new(g, Field::Rational)
}

/// Reachability by repeated relaxation over the edge list.
pub fn reach_oracle(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    loop {
        let mut changed = false;
        for e in g.edges() {
            let (s, d) = (g.source(e).index(), g.range(e).index());
            for u in 0..n {
                if r[u][s] && !r[u][d] {
                    r[u][d] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return r;
        }
    }
}

pub fn vertex_ids(g: &Graph) -> Vec<VertexId> {
    g.vertices().collect()
}

/// Hereditary and saturated, straight from the definitions.
pub fn is_hs_oracle(g: &Graph, set: &BTreeSet<usize>) -> bool {
    let hereditary = g
        .edges()
        .all(|e| !set.contains(&g.source(e).index()) || set.contains(&g.range(e).index()));
    let saturated = g.vertices().all(|v| {
        let out = g.out_edges(v);
        set.contains(&v.index()) || out.is_empty() || out.iter().any(|&e| !set.contains(&g.range(e).index()))
    });
    hereditary && saturated
}

/// All hereditary saturated subsets by checking every subset.
pub fn hs_subsets_oracle(g: &Graph) -> Vec<BTreeSet<usize>> {
    let n = g.vertex_count();
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<BTreeSet<usize>>())
        .filter(|s| is_hs_oracle(g, s))
        .collect()
}

/// Smallest hereditary saturated superset, as the intersection of all of them.
pub fn closure_oracle(g: &Graph, x: &BTreeSet<usize>) -> BTreeSet<usize> {
    hs_subsets_oracle(g)
        .into_iter()
        .filter(|s| x.is_subset(s))
        .reduce(|a, b| a.intersection(&b).copied().collect())
        .expect("the full vertex set qualifies")
}

/// Longest strictly ascending chain in a finite family, by memoized search.
pub fn longest_chain_oracle(family: &[BTreeSet<usize>]) -> usize {
    fn go(i: usize, family: &[BTreeSet<usize>], memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(v) = memo[i] {
            return v;
        }
        let best = (0..family.len())
            .filter(|&j| family[i].is_subset(&family[j]) && family[i] != family[j])
            .map(|j| go(j, family, memo))
            .max()
            .unwrap_or(0);
        memo[i] = Some(best + 1);
        best + 1
    }
    let mut memo = vec![None; family.len()];
    (0..family.len()).map(|i| go(i, family, &mut memo)).max().unwrap_or(0)
}

/// Edge sequences of closed paths at `v` of length `1..=max_len` that revisit
/// `v` only at the end.
pub fn csp_oracle(g: &Graph, v: VertexId, max_len: usize) -> BTreeSet<Vec<String>> {
    let mut out = BTreeSet::new();
    let mut stack = vec![(v, Vec::new())];
    while let Some((at, edges)) = stack.pop() {
        if edges.len() == max_len {
            continue;
        }
        for &e in g.out_edges(at) {
            let mut next = edges.clone();
            next.push(g.edge_name(e).to_string());
            if g.range(e) == v {
                out.insert(next);
            } else {
                stack.push((g.range(e), next));
            }
        }
    }
    out
}
