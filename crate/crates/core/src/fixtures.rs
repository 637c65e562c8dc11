//! Named example graphs and finite windows of the infinite families.
//!
//! | name  | shape                                      |
//! |-------|--------------------------------------------|
//! | `g1`  | `e1: v→v`, `e2: v→w`, `e3: w→w`             |
//! | `g3`  | rose with two petals `f, g` at `v`          |
//! | `g4`  | one vertex `v`, one loop `g`                |
//! | `g6`  | single arrow `e: u→v`                       |
//! | `g7`  | `a: v→w`, `l: w→w`, `b: w→v`                |
//! | `g8`  | two-cycle `a: u→v`, `b: v→u`                |
//!
//! `line_window(n)` is the bi-infinite line truncated to `v₋ₙ … vₙ`;
//! `clock_window(n)` has a sink `v` and vertices `w₁ … wₙ`, each with a loop
//! `fᵢ` and an edge `eᵢ: wᵢ → v`.

use crate::graph::{EdgeSpec, Graph, GraphSpec};

fn build(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
    let spec = GraphSpec {
        vertices: vertices.iter().map(|v| v.to_string()).collect(),
        edges: edges.iter().map(|(e, s, d)| EdgeSpec::new(e, s, d)).collect(),
    };
    Graph::from_spec(&spec).expect("fixture graphs are valid")
}

pub fn g1() -> Graph {
    build(&["v", "w"], &[("e1", "v", "v"), ("e2", "v", "w"), ("e3", "w", "w")])
}

pub fn g3() -> Graph {
    build(&["v"], &[("f", "v", "v"), ("g", "v", "v")])
}

pub fn g4() -> Graph {
    build(&["v"], &[("g", "v", "v")])
}

pub fn g6() -> Graph {
    build(&["u", "v"], &[("e", "u", "v")])
}

pub fn g7() -> Graph {
    build(&["v", "w"], &[("a", "v", "w"), ("l", "w", "w"), ("b", "w", "v")])
}

pub fn g8() -> Graph {
    build(&["u", "v"], &[("a", "u", "v"), ("b", "v", "u")])
}

/// Id of `vᵢ` in a line window (`v_m2` for `v₋₂`).
pub fn line_vertex(i: i64) -> String {
    if i < 0 {
        format!("v_m{}", -i)
    } else {
        format!("v_{i}")
    }
}

fn line_edge(i: i64) -> String {
    if i < 0 {
        format!("e_m{}", -i)
    } else {
        format!("e_{i}")
    }
}

pub fn line_window(n: usize) -> Graph {
    let n = n as i64;
    let spec = GraphSpec {
        vertices: (-n..=n).map(line_vertex).collect(),
        edges: (-n + 1..=n)
            .map(|i| EdgeSpec {
                id: line_edge(i),
                src: line_vertex(i - 1),
                dst: line_vertex(i),
            })
            .collect(),
    };
    Graph::from_spec(&spec).expect("line window is valid")
}

pub fn clock_window(n: usize) -> Graph {
    let mut spec = GraphSpec {
        vertices: vec!["v".to_string()],
        edges: Vec::new(),
    };
    for i in 1..=n {
        let w = format!("w{i}");
        spec.edges.push(EdgeSpec::new(&format!("e{i}"), &w, "v"));
        spec.edges.push(EdgeSpec::new(&format!("f{i}"), &w, &w));
        spec.vertices.push(w);
    }
    Graph::from_spec(&spec).expect("clock window is valid")
}

/// Names of the fixed fixtures.
pub const NAMED: [&str; 6] = ["g1", "g3", "g4", "g6", "g7", "g8"];

/// Resolves `g1`…`g8`, `line:N` / `line_window(N)` and `clock:N` / `clock_window(N)`.
pub fn by_name(name: &str) -> Option<Graph> {
    let window = |prefix: &str, alt: &str| -> Option<usize> {
        name.strip_prefix(prefix)
            .or_else(|| name.strip_prefix(alt).and_then(|s| s.strip_suffix(')')))
            .and_then(|s| s.parse().ok())
    };
    match name {
        "g1" => Some(g1()),
        "g3" => Some(g3()),
        "g4" => Some(g4()),
        "g6" => Some(g6()),
        "g7" => Some(g7()),
        "g8" => Some(g8()),
        _ => {
            if let Some(n) = window("line:", "line_window(") {
                Some(line_window(n))
            } else {
                window("clock:", "clock_window(").map(clock_window)
            }
        }
    }
}
