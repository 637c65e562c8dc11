//! Exact arithmetic in the Leavitt path algebra L_K(E) of a finite graph.
//!
//! Elements are combinations of monomials `μν*`. A product `μν*·αβ*` is
//! resolved by comparing `ν` with `α` (`e*f = δ_{e,f} r(e)`), and the result is
//! brought to normal form by orienting `v = Σ_{s(e)=v} ee*` at the special
//! (least-id) edge `ê` of each non-sink `v`:
//!
//! ```text
//! μ'ê ê*ν'*  →  μ'ν'* − Σ_{f ∈ s⁻¹(v), f ≠ ê} (μ'f)(ν'f)*
//! ```
//!
//! Irreducible monomials are exactly those whose real and ghost parts do not
//! both end in the same special edge, and they form a basis.

mod cycle_poly;
mod element;
mod monomial;
mod parse;
mod rewrite;

use std::collections::BTreeMap;

use thiserror::Error;

pub use cycle_poly::CyclePolynomial;
pub use element::Element;
pub use monomial::Monomial;
pub use rewrite::{RawElement, Strategy, Symbol, Word};

use crate::graph::{EdgeId, Graph, GraphError, Path, VertexId};
use crate::poly::FieldPolynomial;
use crate::scalar::{Field, FieldError, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("undeclared identifier `{name}` at column {column}")]
    Undeclared { name: String, column: usize },
    #[error("cycle `{cycle}` is not based at `{vertex}`")]
    CycleNotBased { cycle: String, vertex: String },
    #[error("`{0}` is not a cycle")]
    NotACycle(String),
    #[error("cycle polynomial {0} does not satisfy p(0) = 1")]
    NotNormalized(String),
    #[error("the trivial cycle only admits p = 1, got {0}")]
    TrivialCycleWithTerms(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Arithmetic context: a graph together with a coefficient field.
#[derive(Debug, Clone, Copy)]
pub struct Algebra<'g> {
    graph: &'g Graph,
    field: Field,
}

impl<'g> Algebra<'g> {
    pub fn new(graph: &'g Graph, field: Field) -> Self {
        Algebra { graph, field }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn one(&self) -> Scalar {
        self.field.one()
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        self.field.from_i64(n)
    }

    pub fn monomial(&self, m: Monomial) -> Element {
        Element::from_term(m, self.one())
    }

    pub fn vertex(&self, v: VertexId) -> Element {
        self.monomial(Monomial::vertex(v))
    }

    pub fn edge(&self, e: EdgeId) -> Element {
        self.path(&Path::from_parts(self.graph.source(e), vec![e]))
    }

    pub fn ghost(&self, e: EdgeId) -> Element {
        self.monomial(Monomial::ghost_path(
            self.graph,
            Path::from_parts(self.graph.source(e), vec![e]),
        ))
    }

    /// A real path as an element.
    pub fn path(&self, p: &Path) -> Element {
        self.monomial(Monomial::real_path(self.graph, p.clone()))
    }

    /// `μ*` for a real path `μ`.
    pub fn path_star(&self, p: &Path) -> Element {
        self.monomial(Monomial::ghost_path(self.graph, p.clone()))
    }

    /// The unit Σ_{v ∈ E⁰} v.
    pub fn unit(&self) -> Element {
        let mut x = Element::zero();
        for v in self.graph.vertices() {
            x.add_term(Monomial::vertex(v), self.one());
        }
        x
    }

    /// Adds `coeff·μν*` in normal form to `out`.
    fn reduce_into(&self, mut real: Path, mut ghost: Path, coeff: &Scalar, out: &mut Element) {
        let g = self.graph;
        loop {
            match (real.last_edge(), ghost.last_edge()) {
                (Some(e), Some(f)) if e == f && g.is_special(e) => {
                    real = real.truncated(g);
                    ghost = ghost.truncated(g);
                    let minus = -coeff;
                    for &other in g.out_edges(g.source(e)) {
                        if other != e {
                            out.add_term(
                                Monomial {
                                    real: real.extended(other),
                                    ghost: ghost.extended(other),
                                },
                                minus.clone(),
                            );
                        }
                    }
                }
                _ => {
                    out.add_term(Monomial { real, ghost }, coeff.clone());
                    return;
                }
            }
        }
    }

    /// Normal form of an arbitrary (possibly non-normal) monomial.
    pub fn normalize_monomial(&self, m: &Monomial) -> Element {
        let mut out = Element::zero();
        self.reduce_into(m.real.clone(), m.ghost.clone(), &self.one(), &mut out);
        out
    }

    fn mul_monomials_into(&self, a: &Monomial, b: &Monomial, coeff: &Scalar, out: &mut Element) {
        let g = self.graph;
        let (nu, alpha) = (&a.ghost, &b.real);
        if nu.source() != alpha.source() {
            return;
        }
        if alpha.starts_with(nu) {
            let rest = alpha.suffix(g, nu.len());
            self.reduce_into(a.real.concat(&rest), b.ghost.clone(), coeff, out);
        } else if nu.starts_with(alpha) {
            let rest = nu.suffix(g, alpha.len());
            self.reduce_into(a.real.clone(), b.ghost.concat(&rest), coeff, out);
        }
    }

    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Element {
        let mut out = Element::zero();
        self.mul_monomials_into(a, b, &self.one(), &mut out);
        out
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                self.mul_monomials_into(a, b, &(c * d), &mut out);
            }
        }
        out
    }

    /// Left-to-right product of several factors.
    pub fn product(&self, factors: &[&Element]) -> Element {
        let mut acc = self.unit();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// `x^k` for `k ≥ 0` (`x^0` is the unit).
    pub fn pow(&self, x: &Element, k: usize) -> Element {
        let mut acc = self.unit();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// The involution `μν* ↦ νμ*`, extended K-linearly.
    pub fn star(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            out.add_term(m.star(), c.clone());
        }
        out
    }

    /// Splits `x` into its corners `u·x·w`, one per (source, range) pair.
    pub fn peirce_split(&self, x: &Element) -> Vec<Element> {
        let mut parts: BTreeMap<(VertexId, VertexId), Element> = BTreeMap::new();
        for (m, c) in x.terms() {
            parts
                .entry((m.source(), m.range()))
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        parts.into_values().collect()
    }

    /// `Σ cᵢ gⁱ` with `g⁰ = v`, for a closed path `g` at `v`.
    pub fn poly_at_path(&self, poly: &FieldPolynomial, v: VertexId, g: &Path) -> Element {
        let mut x = Element::zero();
        for (i, c) in poly.coeffs().iter().enumerate() {
            let m = if i == 0 {
                Monomial::vertex(v)
            } else {
                Monomial::real_path(self.graph, g.power(i))
            };
            x.add_term(m, c.clone());
        }
        x
    }

    pub fn cycle_poly_eval(&self, c: &CyclePolynomial) -> Element {
        c.eval(self)
    }

    /// Normal form of one symbol.
    pub fn symbol(&self, s: Symbol) -> Element {
        match s {
            Symbol::Vertex(v) => self.vertex(v),
            Symbol::Edge(e) => self.edge(e),
            Symbol::Ghost(e) => self.ghost(e),
        }
    }

    /// Normal form of a word; the empty word is the unit.
    pub fn eval_word(&self, w: &[Symbol]) -> Element {
        let Some((first, rest)) = w.split_first() else {
            return self.unit();
        };
        let mut acc = self.symbol(*first);
        for &s in rest {
            if acc.is_zero() {
                break;
            }
            acc = self.mul(&acc, &self.symbol(s));
        }
        acc
    }

    /// Normal form by monomial multiplication.
    pub fn normal_form(&self, raw: &RawElement) -> Element {
        let mut out = Element::zero();
        for (c, w) in &raw.terms {
            out.add_assign(&self.eval_word(w).scale(c));
        }
        out
    }

    /// Normal form by applying the word rewrite rules under `strategy`.
    pub fn normal_form_with(&self, raw: &RawElement, strategy: Strategy) -> Element {
        rewrite::rewrite(self, raw, strategy)
    }

    pub fn parse_raw(&self, text: &str) -> Result<RawElement, AlgebraError> {
        parse::parse(self, text)
    }

    pub fn parse(&self, text: &str) -> Result<Element, AlgebraError> {
        Ok(self.normal_form(&self.parse_raw(text)?))
    }

    /// Terms sorted by their printed monomial, e.g. `u - a b`; zero prints as `0`.
    pub fn render(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(String, &Scalar)> = x
            .terms()
            .map(|(m, c)| (m.label(self.graph), c))
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut s = String::new();
        for (i, (label, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if !abs.is_one() {
                s.push_str(&format!("{abs} "));
            }
            s.push_str(&label);
        }
        s
    }
}
