use crate::graph::{Graph, Path, VertexId};

/// `μν*` for real paths `μ`, `ν` with `r(μ) = r(ν)`. A vertex `v` is the case
/// `μ = ν = v`.
///
/// In normal form `μ` and `ν` never both end in the special edge of the
/// same vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub(crate) real: Path,
    pub(crate) ghost: Path,
}

impl Monomial {
    /// Returns `None` when the ranges differ (the product `μν*` would be zero).
    pub fn new(g: &Graph, real: Path, ghost: Path) -> Option<Monomial> {
        (real.range(g) == ghost.range(g)).then_some(Monomial { real, ghost })
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial {
            real: Path::vertex(v),
            ghost: Path::vertex(v),
        }
    }

    /// The real path `μ` as the monomial `μ r(μ)*`.
    pub fn real_path(g: &Graph, p: Path) -> Monomial {
        let r = p.range(g);
        Monomial {
            real: p,
            ghost: Path::vertex(r),
        }
    }

    /// The ghost path `ν*`.
    pub fn ghost_path(g: &Graph, p: Path) -> Monomial {
        let r = p.range(g);
        Monomial {
            real: Path::vertex(r),
            ghost: p,
        }
    }

    pub fn real(&self) -> &Path {
        &self.real
    }

    pub fn ghost(&self) -> &Path {
        &self.ghost
    }

    /// s(μν*) = s(μ).
    pub fn source(&self) -> VertexId {
        self.real.source()
    }

    /// r(μν*) = s(ν).
    pub fn range(&self) -> VertexId {
        self.ghost.source()
    }

    pub fn len(&self) -> usize {
        self.real.len() + self.ghost.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.len() == 0
    }

    pub fn is_real(&self) -> bool {
        self.ghost.is_empty()
    }

    pub fn is_ghost(&self) -> bool {
        self.real.is_empty()
    }

    pub fn star(&self) -> Monomial {
        Monomial {
            real: self.ghost.clone(),
            ghost: self.real.clone(),
        }
    }

    pub fn is_normal(&self, g: &Graph) -> bool {
        match (self.real.last_edge(), self.ghost.last_edge()) {
            (Some(e), Some(f)) => !(e == f && g.is_special(e)),
            _ => true,
        }
    }

    /// `e1 e2 f2* f1*` for μ = e1 e2, ν = f1 f2; a vertex prints as its id.
    pub fn label(&self, g: &Graph) -> String {
        if self.is_vertex() {
            return g.vertex_name(self.real.source()).to_string();
        }
        let reals = self.real.edges().iter().map(|&e| g.edge_name(e).to_string());
        let ghosts = self
            .ghost
            .edges()
            .iter()
            .rev()
            .map(|&e| format!("{}*", g.edge_name(e)));
        reals.chain(ghosts).collect::<Vec<_>>().join(" ")
    }
}
