//! Hereditary and saturated vertex sets, the Λₙ closure iteration, the lattice
//! of hereditary saturated subsets and the ascending-chain analysis built on it.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{dot_quote, Graph, GraphError, VertexId};

/// Default bound on |E⁰| for lattice enumeration (the scan is over 2^|E⁰| subsets).
pub const DEFAULT_VERTEX_CAP: usize = 20;
/// Hard ceiling on the configurable cap; the scan keeps per-subset tables.
pub const MAX_VERTEX_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosureError {
    #[error("graph has {vertices} vertices, above the lattice cap of {cap}")]
    VertexCap { vertices: usize, cap: usize },
    #[error("vertex `{0}` is not in the closure of the given set")]
    NotInClosure(String),
    #[error("no cycle of positive length is based at `{0}`")]
    NoCycleAt(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A subset of E⁰, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(BTreeSet<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn all(g: &Graph) -> Self {
        g.vertices().collect()
    }

    /// Parses a comma-separated list of vertex ids; the empty string is ∅.
    pub fn parse(g: &Graph, text: &str) -> Result<Self, GraphError> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| g.vertex(s))
            .collect()
    }

    pub fn from_names(g: &Graph, names: &[&str]) -> Result<Self, GraphError> {
        names.iter().map(|s| g.vertex(s)).collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.0.insert(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub(crate) fn to_mask(&self) -> u64 {
        self.iter().fold(0, |m, v| m | (1 << v.index()))
    }

    pub(crate) fn from_mask(mask: u64) -> Self {
        (0..64)
            .filter(|i| mask >> i & 1 == 1)
            .map(VertexId)
            .collect()
    }

    pub fn names<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.iter().map(|v| g.vertex_name(v)).collect()
    }

    /// `{v, w}`; the empty set prints as `{}`.
    pub fn label(&self, g: &Graph) -> String {
        format!("{{{}}}", self.names(g).join(", "))
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

/// `w ∈ H` and `w ≥ v` imply `v ∈ H`.
pub fn is_hereditary(g: &Graph, h: &VertexSet) -> bool {
    h.iter()
        .all(|w| g.vertices().all(|v| !g.reaches(w, v) || h.contains(v)))
}

/// Every non-sink whose edges all land in `H` lies in `H`.
pub fn is_saturated(g: &Graph, h: &VertexSet) -> bool {
    g.vertices().all(|v| {
        h.contains(v)
            || g.is_sink(v)
            || !g.out_edges(v).iter().all(|&e| h.contains(g.range(e)))
    })
}

/// The ascending chain Λ₀(X) ⊆ Λ₁(X) ⊆ … recorded up to and including the
/// first repetition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureTrace {
    pub input: VertexSet,
    pub levels: Vec<VertexSet>,
}

impl ClosureTrace {
    pub fn closure(&self) -> &VertexSet {
        self.levels.last().expect("trace has at least Λ₀")
    }

    /// Smallest `k` with `v ∈ Λₖ`.
    pub fn level_of(&self, v: VertexId) -> Option<usize> {
        self.levels.iter().position(|l| l.contains(v))
    }

    /// One line per Λₙ, then the closure.
    pub fn report(&self, g: &Graph) -> String {
        let mut s = String::new();
        for (n, level) in self.levels.iter().enumerate() {
            s.push_str(&format!("Lambda_{n} = {}\n", level.label(g)));
        }
        s.push_str(&format!("closure = {}\n", self.closure().label(g)));
        s
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::json!({
            "input": self.input.names(g),
            "levels": self.levels.iter().map(|l| l.names(g)).collect::<Vec<_>>(),
            "closure": self.closure().names(g),
        })
    }
}

/// Hereditary saturated closure by the Λₙ recursion.
pub fn closure(g: &Graph, x: &VertexSet) -> ClosureTrace {
    let lambda0: VertexSet = g
        .vertices()
        .filter(|&v| x.iter().any(|u| g.reaches(u, v)))
        .collect();
    let mut levels = vec![lambda0];
    loop {
        let prev = levels.last().expect("nonempty");
        let mut next = prev.clone();
        for y in g.vertices() {
            if !g.is_sink(y) && g.out_edges(y).iter().all(|&e| prev.contains(g.range(e))) {
                next.insert(y);
            }
        }
        let done = &next == prev;
        levels.push(next);
        if done {
            break;
        }
    }
    ClosureTrace {
        input: x.clone(),
        levels,
    }
}

/// Closures of the prefixes `{s₁}`, `{s₁, s₂}`, … of a vertex sequence.
pub fn prefix_closure_chain(g: &Graph, seq: &[VertexId]) -> Vec<VertexSet> {
    (1..=seq.len())
        .map(|i| closure(g, &seq[..i].iter().copied().collect()).closure().clone())
        .collect()
}

/// All hereditary saturated subsets of E⁰, ordered by size then members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSLattice {
    pub members: Vec<VertexSet>,
    /// A longest strictly ascending chain, from ∅ to E⁰.
    pub longest_chain: Vec<VertexSet>,
}

impl HSLattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, h: &VertexSet) -> bool {
        self.members.binary_search_by(|m| order(m, h)).is_ok()
    }

    /// Pairs `(i, j)` with `members[i]` covered by `members[j]`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let masks: Vec<u64> = self.members.iter().map(VertexSet::to_mask).collect();
        let below = |a: u64, b: u64| a != b && a & !b == 0;
        let mut out = Vec::new();
        for (i, &a) in masks.iter().enumerate() {
            for (j, &b) in masks.iter().enumerate() {
                if below(a, b) && !masks.iter().any(|&c| below(a, c) && below(c, b)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Hasse diagram in Graphviz syntax, edges pointing upward.
    pub fn to_dot(&self, g: &Graph) -> String {
        let mut s = String::from("digraph HS {\n  rankdir=BT;\n");
        for (i, m) in self.members.iter().enumerate() {
            s.push_str(&format!("  h{i} [label={}];\n", dot_quote(&m.label(g))));
        }
        for (i, j) in self.covers() {
            s.push_str(&format!("  h{i} -> h{j};\n"));
        }
        s.push_str("}\n");
        s
    }
}

fn order(a: &VertexSet, b: &VertexSet) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Enumerates the hereditary saturated lattice and a longest chain in it.
pub fn hs_lattice(g: &Graph, cap: usize) -> Result<HSLattice, ClosureError> {
    let n = g.vertex_count();
    let cap = cap.min(MAX_VERTEX_CAP);
    if n > cap {
        return Err(ClosureError::VertexCap { vertices: n, cap });
    }
    let desc: Vec<u64> = g
        .vertices()
        .map(|u| {
            g.vertices()
                .filter(|&v| g.reaches(u, v))
                .fold(0, |m, v| m | 1 << v.index())
        })
        .collect();
    let ranges: Vec<u64> = g
        .vertices()
        .map(|u| {
            g.out_edges(u)
                .iter()
                .fold(0, |m, &e| m | 1 << g.range(e).index())
        })
        .collect();
    let is_member = |mask: u64| {
        (0..n).all(|v| {
            if mask >> v & 1 == 1 {
                desc[v] & !mask == 0
            } else {
                ranges[v] == 0 || ranges[v] & !mask != 0
            }
        })
    };

    // chain[m]: longest chain of members ending at m (0 for non-members);
    // best[m]: longest chain ending at a member contained in m.
    const NONE: u32 = u32::MAX;
    let full = 1usize << n;
    let mut chain = vec![0u8; full];
    let mut pred = vec![NONE; full];
    let mut best = vec![0u8; full];
    let mut best_at = vec![NONE; full];
    let mut members = Vec::new();
    for mask in 0..full {
        let (mut b, mut at) = (0u8, NONE);
        for v in 0..n {
            let sub = mask & !(1 << v);
            if sub != mask && best[sub] > b {
                b = best[sub];
                at = best_at[sub];
            }
        }
        if is_member(mask as u64) {
            members.push(mask as u64);
            chain[mask] = b + 1;
            pred[mask] = at;
            best[mask] = b + 1;
            best_at[mask] = mask as u32;
        } else {
            best[mask] = b;
            best_at[mask] = at;
        }
    }

    let mut longest_chain = Vec::new();
    let mut at = (full - 1) as u32;
    while at != NONE {
        longest_chain.push(VertexSet::from_mask(at as u64));
        at = pred[at as usize];
    }
    longest_chain.reverse();

    let mut members: Vec<VertexSet> = members.into_iter().map(VertexSet::from_mask).collect();
    members.sort_by(order);
    Ok(HSLattice {
        members,
        longest_chain,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoetherianReport {
    pub noetherian: bool,
    pub lattice_size: usize,
    pub longest_chain: Vec<VertexSet>,
}

#[derive(Serialize)]
struct NoetherianJson<'a> {
    noetherian: bool,
    lattice_size: usize,
    longest_chain_length: usize,
    longest_chain: Vec<Vec<&'a str>>,
}

impl NoetherianReport {
    pub fn report(&self, g: &Graph) -> String {
        format!(
            "Noetherian: {}; lattice size {}; longest chain {}\nchain: {}\n",
            if self.noetherian { "yes" } else { "no" },
            self.lattice_size,
            self.longest_chain.len(),
            self.longest_chain
                .iter()
                .map(|s| s.label(g))
                .collect::<Vec<_>>()
                .join(" < ")
        )
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::to_value(NoetherianJson {
            noetherian: self.noetherian,
            lattice_size: self.lattice_size,
            longest_chain_length: self.longest_chain.len(),
            longest_chain: self.longest_chain.iter().map(|s| s.names(g)).collect(),
        })
        .expect("report serializes")
    }
}

/// Ascending-chain analysis of the hereditary saturated closures.
///
/// On a finite graph the lattice is finite, so every strictly ascending chain
/// has at most `longest_chain.len()` members and the chain condition holds;
/// the enumeration itself is the evidence.
pub fn noetherian_report(g: &Graph, cap: usize) -> Result<NoetherianReport, ClosureError> {
    let lattice = hs_lattice(g, cap)?;
    let chain_ok = lattice
        .longest_chain
        .windows(2)
        .all(|w| w[0].is_subset(&w[1]) && w[0] != w[1]);
    Ok(NoetherianReport {
        noetherian: chain_ok && lattice.contains(&VertexSet::all(g)),
        lattice_size: lattice.len(),
        longest_chain: lattice.longest_chain,
    })
}

/// For `v` in the closure of `S` with a cycle based at `v`, finds `u ∈ S`
/// with `u ≥ v` by walking back down the Λ levels: at each level above 0,
/// one of `v`'s successors lies on the cycle through `v`.
pub fn reach_witness(g: &Graph, s: &VertexSet, v: VertexId) -> Result<VertexId, ClosureError> {
    let trace = closure(g, s);
    let name = || g.vertex_name(v).to_string();
    let mut level = trace.level_of(v).ok_or_else(|| ClosureError::NotInClosure(name()))?;
    if !g.has_cycle_at(v) {
        return Err(ClosureError::NoCycleAt(name()));
    }
    let mut at = v;
    while level > 0 {
        at = g
            .out_edges(at)
            .iter()
            .map(|&e| g.range(e))
            .find(|&w| g.reaches(w, at))
            .expect("a vertex with a cycle has a successor on it");
        level = trace.level_of(at).expect("successor lies in the previous level");
    }
    Ok(s
        .iter()
        .find(|&u| g.reaches(u, at))
        .expect("Λ₀ is the set reachable from S"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(g: &Graph, names: &[&str]) -> VertexSet {
        VertexSet::from_names(g, names).unwrap()
    }

    #[test]
    fn predicates_on_fixtures() {
        let g1 = fixtures::g1();
        assert!(!is_hereditary(&g1, &set(&g1, &["v"])));
        assert!(is_hereditary(&g1, &set(&g1, &["w"])));
        assert!(is_hereditary(&g1, &VertexSet::all(&g1)));
        assert!(is_saturated(&g1, &set(&g1, &["w"])));
        assert!(is_saturated(&g1, &VertexSet::new()));
        let g6 = fixtures::g6();
        assert!(!is_saturated(&g6, &set(&g6, &["v"])));
    }

    #[test]
    fn closures_of_g1() {
        let g = fixtures::g1();
        assert_eq!(closure(&g, &set(&g, &["v"])).closure(), &set(&g, &["v", "w"]));
        assert_eq!(closure(&g, &set(&g, &["w"])).closure(), &set(&g, &["w"]));
        let empty = closure(&g, &VertexSet::new());
        assert!(empty.closure().is_empty());
        assert_eq!(empty.levels.len(), 2);
    }

    #[test]
    fn trace_report_format() {
        let g = fixtures::g1();
        let report = closure(&g, &set(&g, &["v"])).report(&g);
        assert_eq!(report, "Lambda_0 = {v, w}\nLambda_1 = {v, w}\nclosure = {v, w}\n");
    }

    #[test]
    fn small_lattices() {
        let g1 = fixtures::g1();
        let l = hs_lattice(&g1, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(l.members, vec![VertexSet::new(), set(&g1, &["w"]), set(&g1, &["v", "w"])]);
        assert_eq!(l.longest_chain.len(), 3);
        let g4 = fixtures::g4();
        assert_eq!(hs_lattice(&g4, 20).unwrap().members, vec![VertexSet::new(), set(&g4, &["v"])]);
        let g6 = fixtures::g6();
        let l6 = hs_lattice(&g6, 20).unwrap();
        assert_eq!(l6.members, vec![VertexSet::new(), set(&g6, &["u", "v"])]);
        assert_eq!(l6.covers(), vec![(0, 1)]);
    }

    #[test]
    fn lattice_cap() {
        let g = fixtures::clock_window(5);
        assert_eq!(
            hs_lattice(&g, 4),
            Err(ClosureError::VertexCap { vertices: 6, cap: 4 })
        );
    }

    #[test]
    fn noetherian_g1() {
        let g = fixtures::g1();
        let r = noetherian_report(&g, DEFAULT_VERTEX_CAP).unwrap();
        assert!(r.noetherian);
        assert_eq!(
            r.report(&g),
            "Noetherian: yes; lattice size 3; longest chain 3\nchain: {} < {w} < {v, w}\n"
        );
    }

    #[test]
    fn witnesses() {
        let g1 = fixtures::g1();
        let w = g1.vertex("w").unwrap();
        assert_eq!(reach_witness(&g1, &set(&g1, &["v"]), w).unwrap(), g1.vertex("v").unwrap());
        let v = g1.vertex("v").unwrap();
        assert!(matches!(
            reach_witness(&g1, &set(&g1, &["w"]), v),
            Err(ClosureError::NotInClosure(_))
        ));
        let g8 = fixtures::g8();
        let (u, v) = (g8.vertex("u").unwrap(), g8.vertex("v").unwrap());
        assert_eq!(reach_witness(&g8, &set(&g8, &["u"]), v).unwrap(), u);
        let g6 = fixtures::g6();
        let gv = g6.vertex("v").unwrap();
        assert!(matches!(
            reach_witness(&g6, &set(&g6, &["v"]), gv),
            Err(ClosureError::NoCycleAt(_))
        ));
    }

    #[test]
    fn cycle_vertices_enter_at_level_zero() {
        // A vertex on a cycle is reached from S as soon as any vertex of the cycle is.
        let g = crate::graph::load_graph(
            r#"{"vertices": ["x", "y", "z"],
                "edges": [{"id": "a", "src": "x", "dst": "y"},
                          {"id": "b", "src": "y", "dst": "x"},
                          {"id": "c", "src": "y", "dst": "z"},
                          {"id": "d", "src": "z", "dst": "y"}]}"#,
        )
        .unwrap();
        let s = set(&g, &["z"]);
        let x = g.vertex("x").unwrap();
        let trace = closure(&g, &s);
        assert_eq!(trace.level_of(x), Some(0));
        assert_eq!(reach_witness(&g, &s, x).unwrap(), g.vertex("z").unwrap());
    }
}
