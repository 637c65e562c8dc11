//! Finite directed multigraphs, paths, cycles and closed simple paths.
//!
//! Vertex and edge ids are opaque strings. Internally both are numbered in
//! lexicographic order of their ids, so every order derived from [`VertexId`] or
//! [`EdgeId`] (including `Vec<EdgeId>` comparison) is lexicographic on ids.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph file at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate vertex id `{id}` at {at}")]
    DuplicateVertex { id: String, at: String },
    #[error("duplicate edge id `{id}` at {at}")]
    DuplicateEdge { id: String, at: String },
    #[error("edge id `{id}` at {at} is already used as a vertex id")]
    IdClash { id: String, at: String },
    #[error("dangling endpoint `{endpoint}` of edge `{edge}` at {at}")]
    DanglingEndpoint {
        edge: String,
        endpoint: String,
        at: String,
    },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edges `{0}` and `{1}` are not composable")]
    NotComposable(String, String),
    #[error("path `{0}` is not a closed path of positive length")]
    NotClosed(String),
    #[error("length bound must be at least 1")]
    ZeroBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub(crate) usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// On-disk form of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
}

impl EdgeSpec {
    pub fn new(id: &str, src: &str, dst: &str) -> Self {
        EdgeSpec {
            id: id.to_string(),
            src: src.to_string(),
            dst: dst.to_string(),
        }
    }
}

/// Either kind of graph identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphItem {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// A finite (hence row-finite) directed multigraph. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Graph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    source: Vec<VertexId>,
    range: Vec<VertexId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    names: HashMap<String, GraphItem>,
    reach: Vec<Vec<bool>>,
}

/// Parses a graph document (JSON object with `vertices` and `edges`).
pub fn load_graph(text: &str) -> Result<Graph, GraphError> {
    let spec: GraphSpec = serde_json::from_str(text).map_err(|e| GraphError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Graph::from_spec(&spec)
}

impl Graph {
    pub fn from_spec(spec: &GraphSpec) -> Result<Graph, GraphError> {
        let mut names: HashMap<String, usize> = HashMap::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if names.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex {
                    id: v.clone(),
                    at: format!("vertices[{i}]"),
                });
            }
        }
        let mut seen_edges: HashMap<&str, usize> = HashMap::new();
        for (i, e) in spec.edges.iter().enumerate() {
            let at = format!("edges[{i}]");
            if names.contains_key(&e.id) {
                return Err(GraphError::IdClash { id: e.id.clone(), at });
            }
            if seen_edges.insert(&e.id, i).is_some() {
                return Err(GraphError::DuplicateEdge { id: e.id.clone(), at });
            }
            for endpoint in [&e.src, &e.dst] {
                if !names.contains_key(endpoint) {
                    return Err(GraphError::DanglingEndpoint {
                        edge: e.id.clone(),
                        endpoint: endpoint.clone(),
                        at,
                    });
                }
            }
        }

        let mut vertex_names = spec.vertices.clone();
        vertex_names.sort();
        let mut edges: Vec<&EdgeSpec> = spec.edges.iter().collect();
        edges.sort_by(|a, b| a.id.cmp(&b.id));

        let mut lookup = HashMap::new();
        for (i, v) in vertex_names.iter().enumerate() {
            lookup.insert(v.clone(), GraphItem::Vertex(VertexId(i)));
        }
        let vid = |name: &str| match lookup.get(name) {
            Some(GraphItem::Vertex(v)) => *v,
            _ => unreachable!("endpoints validated above"),
        };
        let source: Vec<VertexId> = edges.iter().map(|e| vid(&e.src)).collect();
        let range: Vec<VertexId> = edges.iter().map(|e| vid(&e.dst)).collect();
        let n = vertex_names.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for i in 0..edges.len() {
            out_edges[source[i].0].push(EdgeId(i));
            in_edges[range[i].0].push(EdgeId(i));
        }
        let edge_names: Vec<String> = edges.iter().map(|e| e.id.clone()).collect();
        for (i, e) in edge_names.iter().enumerate() {
            lookup.insert(e.clone(), GraphItem::Edge(EdgeId(i)));
        }

        let mut graph = Graph {
            vertex_names,
            edge_names,
            source,
            range,
            out_edges,
            in_edges,
            names: lookup,
            reach: Vec::new(),
        };
        graph.reach = (0..n).map(|v| graph.bfs(VertexId(v))).collect();
        Ok(graph)
    }

    fn bfs(&self, start: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        seen[start.0] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.out_edges[u.0] {
                let w = self.range[e.0];
                if !seen[w.0] {
                    seen[w.0] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertex_names.clone(),
            edges: self
                .edges()
                .map(|e| EdgeSpec::new(self.edge_name(e), self.vertex_name(self.source(e)), self.vertex_name(self.range(e))))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("graph spec serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_count()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.0]
    }

    pub fn lookup(&self, name: &str) -> Option<GraphItem> {
        self.names.get(name).copied()
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        match self.lookup(name) {
            Some(GraphItem::Vertex(v)) => Ok(v),
            _ => Err(GraphError::UnknownVertex(name.to_string())),
        }
    }

    pub fn edge(&self, name: &str) -> Result<EdgeId, GraphError> {
        match self.lookup(name) {
            Some(GraphItem::Edge(e)) => Ok(e),
            _ => Err(GraphError::UnknownEdge(name.to_string())),
        }
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.source[e.0]
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.range[e.0]
    }

    /// s⁻¹(v), in id order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// r⁻¹(v), in id order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.0].is_empty()
    }

    /// The edge singled out at a non-sink when orienting `v = Σ ee*`: the
    /// least edge id in s⁻¹(v).
    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.out_edges[v.0].first().copied()
    }

    pub fn is_special(&self, e: EdgeId) -> bool {
        self.special_edge(self.source(e)) == Some(e)
    }

    /// The preorder `u ≥ v`: `u = v` or a path runs from `u` to `v`.
    pub fn reaches(&self, u: VertexId, v: VertexId) -> bool {
        self.reach[u.0][v.0]
    }

    pub fn reaches_by_name(&self, u: &str, v: &str) -> Result<bool, GraphError> {
        Ok(self.reaches(self.vertex(u)?, self.vertex(v)?))
    }

    /// True when some closed path of positive length is based at `v`.
    pub fn has_cycle_at(&self, v: VertexId) -> bool {
        self.out_edges[v.0].iter().any(|&e| self.reaches(self.range(e), v))
    }

    pub fn is_acyclic(&self) -> bool {
        self.vertices().all(|v| !self.has_cycle_at(v))
    }

    /// Length of the longest path, for acyclic graphs.
    pub fn longest_path_len(&self) -> Option<usize> {
        if !self.is_acyclic() {
            return None;
        }
        let n = self.vertex_count();
        let mut memo: Vec<Option<usize>> = vec![None; n];
        fn depth(g: &Graph, v: VertexId, memo: &mut Vec<Option<usize>>) -> usize {
            if let Some(d) = memo[v.0] {
                return d;
            }
            let d = g
                .out_edges(v)
                .iter()
                .map(|&e| 1 + depth(g, g.range(e), memo))
                .max()
                .unwrap_or(0);
            memo[v.0] = Some(d);
            d
        }
        Some(self.vertices().map(|v| depth(self, v, &mut memo)).max().unwrap_or(0))
    }

    /// Builds and validates a path.
    pub fn path(&self, start: VertexId, edges: Vec<EdgeId>) -> Result<Path, GraphError> {
        let mut at = start;
        for (i, &e) in edges.iter().enumerate() {
            if self.source(e) != at {
                let prev = if i == 0 {
                    self.vertex_name(start).to_string()
                } else {
                    self.edge_name(edges[i - 1]).to_string()
                };
                return Err(GraphError::NotComposable(prev, self.edge_name(e).to_string()));
            }
            at = self.range(e);
        }
        Ok(Path { start, edges })
    }

    /// Builds a nonempty path from edge ids alone.
    pub fn path_of_edges(&self, edges: Vec<EdgeId>) -> Result<Path, GraphError> {
        let start = self.source(*edges.first().expect("path_of_edges needs an edge"));
        self.path(start, edges)
    }

    /// Parses a whitespace-separated list of edge ids, or a single vertex id.
    pub fn parse_path(&self, text: &str) -> Result<Path, GraphError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if let [single] = tokens.as_slice() {
            if let Ok(v) = self.vertex(single) {
                return Ok(Path::vertex(v));
            }
        }
        if tokens.is_empty() {
            return Err(GraphError::UnknownEdge(String::new()));
        }
        let edges = tokens
            .iter()
            .map(|t| self.edge(t))
            .collect::<Result<Vec<_>, _>>()?;
        self.path_of_edges(edges)
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            self.vertex_name(p.start).to_string()
        } else {
            p.edges
                .iter()
                .map(|&e| self.edge_name(e))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Every path (including the trivial one) starting at `v` with at most `max_len` edges.
    pub fn paths_from(&self, v: VertexId, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::vertex(v)];
        let mut frontier = vec![Path::vertex(v)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.out_edges(p.range(self)) {
                    next.push(p.extended(e));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// A shortest path from `u` to `v`, found breadth first.
    pub fn shortest_path(&self, u: VertexId, v: VertexId) -> Option<Path> {
        let mut prev: Vec<Option<EdgeId>> = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        seen[u.0] = true;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                let mut edges = Vec::new();
                let mut at = v;
                while at != u {
                    let e = prev[at.0].expect("visited vertices have a parent edge");
                    edges.push(e);
                    at = self.source(e);
                }
                edges.reverse();
                return Some(Path::from_parts(u, edges));
            }
            for &e in self.out_edges(x) {
                let y = self.range(e);
                if !seen[y.0] {
                    seen[y.0] = true;
                    prev[y.0] = Some(e);
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// All vertex-simple closed paths, once per base vertex, ordered by edge ids.
    pub fn enumerate_cycles(&self) -> Vec<Cycle> {
        let mut out = Vec::new();
        for v in self.vertices() {
            let mut on_path = vec![false; self.vertex_count()];
            on_path[v.0] = true;
            let mut edges = Vec::new();
            self.cycle_dfs(v, v, &mut on_path, &mut edges, &mut out);
        }
        out.sort_by(|a, b| a.0.edges.cmp(&b.0.edges));
        out
    }

    fn cycle_dfs(
        &self,
        base: VertexId,
        at: VertexId,
        on_path: &mut [bool],
        edges: &mut Vec<EdgeId>,
        out: &mut Vec<Cycle>,
    ) {
        for &e in self.out_edges(at) {
            let w = self.range(e);
            edges.push(e);
            if w == base {
                out.push(Cycle(Path {
                    start: base,
                    edges: edges.clone(),
                }));
            } else if !on_path[w.0] {
                on_path[w.0] = true;
                self.cycle_dfs(base, w, on_path, edges, out);
                on_path[w.0] = false;
            }
            edges.pop();
        }
    }

    /// Closed simple paths based at `v` (returning to `v` only at the end) of
    /// length at most `max_len`, ordered by edge ids.
    pub fn csp_enumerate(&self, v: VertexId, max_len: usize) -> Result<Vec<Path>, GraphError> {
        if max_len == 0 {
            return Err(GraphError::ZeroBound);
        }
        let mut out = Vec::new();
        self.csp_dfs(v, v, max_len, &mut Vec::new(), &mut out, usize::MAX);
        out.sort_by(|a, b| a.edges.cmp(&b.edges));
        Ok(out)
    }

    fn csp_dfs(
        &self,
        base: VertexId,
        at: VertexId,
        budget: usize,
        edges: &mut Vec<EdgeId>,
        out: &mut Vec<Path>,
        limit: usize,
    ) {
        if budget == 0 || out.len() >= limit {
            return;
        }
        for &e in self.out_edges(at) {
            let w = self.range(e);
            edges.push(e);
            if w == base {
                out.push(Path {
                    start: base,
                    edges: edges.clone(),
                });
            } else if self.reaches(w, base) {
                self.csp_dfs(base, w, budget - 1, edges, out, limit);
            }
            edges.pop();
            if out.len() >= limit {
                return;
            }
        }
    }

    /// Length bound within which two closed simple paths at a vertex show up
    /// whenever two exist at all: a shortest cycle through `v`, or a detour
    /// `v → x`, a simple cycle at `x`, `x → v`.
    pub fn csp_search_bound(&self) -> usize {
        (3 * self.vertex_count()).max(1)
    }

    /// |CSP(v)| capped at `cap` (so 0, 1 or "at least `cap`").
    pub fn csp_count_capped(&self, v: VertexId, cap: usize) -> usize {
        let mut out = Vec::new();
        self.csp_dfs(v, v, self.csp_search_bound(), &mut Vec::new(), &mut out, cap);
        out.len().min(cap)
    }

    /// Splits a closed path at every intermediate return to its base vertex.
    pub fn cp_factorize(&self, path: &Path) -> Result<Vec<Path>, GraphError> {
        if path.edges.is_empty() || path.range(self) != path.start {
            return Err(GraphError::NotClosed(self.path_label(path)));
        }
        let base = path.start;
        let mut factors = Vec::new();
        let mut current = Vec::new();
        for &e in &path.edges {
            current.push(e);
            if self.range(e) == base {
                factors.push(Path {
                    start: base,
                    edges: std::mem::take(&mut current),
                });
            }
        }
        Ok(factors)
    }

    /// Edges leaving a vertex of `path` other than the path's own edge there.
    pub fn exits(&self, path: &Path) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = path
            .edges
            .iter()
            .flat_map(|&ei| {
                self.out_edges(self.source(ei))
                    .iter()
                    .copied()
                    .filter(move |&e| e != ei)
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn is_cycle(&self, path: &Path) -> bool {
        if path.edges.is_empty() || path.range(self) != path.start {
            return false;
        }
        let mut seen = vec![false; self.vertex_count()];
        path.edges.iter().all(|&e| {
            let s = self.source(e);
            !std::mem::replace(&mut seen[s.0], true)
        })
    }

    /// Graphviz rendering: one node per vertex, one labelled arrow per edge.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph E {\n");
        for v in self.vertices() {
            s.push_str(&format!("  {};\n", dot_quote(self.vertex_name(v))));
        }
        for e in self.edges() {
            s.push_str(&format!(
                "  {} -> {} [label={}];\n",
                dot_quote(self.vertex_name(self.source(e))),
                dot_quote(self.vertex_name(self.range(e))),
                dot_quote(self.edge_name(e))
            ));
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A path `e₁⋯eₙ`; the trivial path (`n = 0`) is its base vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    start: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            start: v,
            edges: Vec::new(),
        }
    }

    pub(crate) fn from_parts(start: VertexId, edges: Vec<EdgeId>) -> Path {
        Path { start, edges }
    }

    pub fn source(&self) -> VertexId {
        self.start
    }

    pub fn range(&self, g: &Graph) -> VertexId {
        self.edges.last().map_or(self.start, |&e| g.range(e))
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    pub fn extended(&self, e: EdgeId) -> Path {
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            start: self.start,
            edges,
        }
    }

    /// Path concatenation; the caller guarantees `r(self) = s(other)`.
    pub fn concat(&self, other: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path {
            start: self.start,
            edges,
        }
    }

    pub fn power(&self, k: usize) -> Path {
        Path {
            start: self.start,
            edges: self.edges.repeat(k),
        }
    }

    /// Drops the last edge; the caller guarantees the path is nonempty.
    pub fn truncated(&self, g: &Graph) -> Path {
        let mut edges = self.edges.clone();
        let e = edges.pop().expect("nonempty path");
        Path {
            start: if edges.is_empty() { g.source(e) } else { self.start },
            edges,
        }
    }

    /// The suffix after the first `k` edges.
    pub fn suffix(&self, g: &Graph, k: usize) -> Path {
        let start = if k == 0 {
            self.start
        } else {
            g.range(self.edges[k - 1])
        };
        Path {
            start,
            edges: self.edges[k..].to_vec(),
        }
    }

    /// The prefix of the first `k` edges.
    pub fn prefix(&self, k: usize) -> Path {
        Path {
            start: self.start,
            edges: self.edges[..k].to_vec(),
        }
    }

    pub fn starts_with(&self, other: &Path) -> bool {
        self.start == other.start && self.edges.starts_with(&other.edges)
    }
}

/// A closed path whose edge sources are pairwise distinct, with its base vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle(Path);

impl Cycle {
    pub fn new(g: &Graph, path: Path) -> Option<Cycle> {
        g.is_cycle(&path).then_some(Cycle(path))
    }

    pub fn base(&self) -> VertexId {
        self.0.start
    }

    pub fn path(&self) -> &Path {
        &self.0
    }

    pub fn into_path(self) -> Path {
        self.0
    }
}

/// Displays a value that needs the graph for its names.
pub struct Named<'a, T: ?Sized> {
    pub graph: &'a Graph,
    pub value: &'a T,
}

impl fmt::Display for Named<'_, Path> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.graph.path_label(self.value))
    }
}
