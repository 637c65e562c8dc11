//! Word-level rewriting with a selectable redex strategy.
//!
//! Rules act on adjacent symbol pairs:
//! - vertex absorption and the zero products forced by `vv' = δv`,
//!   `s(e)e = er(e) = e`, `r(e)e* = e*s(e) = e*`;
//! - `e*f → δ_{e,f} r(e)`;
//! - `ê ê* → v − Σ_{f ≠ ê} f f*` for the special edge `ê` of `v`.
//!
//! Irreducible words are a lone vertex or `μν*` in normal form, so every
//! strategy must land on the same [`Element`].

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{Algebra, Element, Monomial};
use crate::graph::{EdgeId, Path, VertexId};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Vertex(VertexId),
    Edge(EdgeId),
    Ghost(EdgeId),
}

impl Symbol {
    pub fn star(self) -> Symbol {
        match self {
            Symbol::Vertex(v) => Symbol::Vertex(v),
            Symbol::Edge(e) => Symbol::Ghost(e),
            Symbol::Ghost(e) => Symbol::Edge(e),
        }
    }
}

pub type Word = Vec<Symbol>;

/// A formal combination of words; the empty word stands for the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawElement {
    pub terms: Vec<(Scalar, Word)>,
}

impl RawElement {
    pub fn word(c: Scalar, w: Word) -> RawElement {
        RawElement {
            terms: vec![(c, w)],
        }
    }

    pub fn add(mut self, other: RawElement) -> RawElement {
        self.terms.extend(other.terms);
        self
    }

    pub fn neg(self) -> RawElement {
        RawElement {
            terms: self.terms.into_iter().map(|(c, w)| (-c, w)).collect(),
        }
    }

    pub fn mul(&self, other: &RawElement) -> RawElement {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, u) in &self.terms {
            for (b, w) in &other.terms {
                let mut word = u.clone();
                word.extend_from_slice(w);
                terms.push((a * b, word));
            }
        }
        RawElement { terms }
    }

    /// Reverses every word and swaps edges with ghosts.
    pub fn star(&self) -> RawElement {
        RawElement {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| (c.clone(), w.iter().rev().map(|s| s.star()).collect()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// Uniform choice among all redexes, seeded.
    Random(u64),
}

/// Replacement for the pair `(x, y)`: `None` if it is not a redex, otherwise
/// signed words (an empty list means the pair is zero).
fn rule(alg: &Algebra<'_>, x: Symbol, y: Symbol) -> Option<Vec<(bool, Word)>> {
    use Symbol::*;
    let g = alg.graph();
    let keep = |cond: bool, s: Symbol| Some(if cond { vec![(false, vec![s])] } else { vec![] });
    match (x, y) {
        (Vertex(u), Vertex(w)) => keep(u == w, Vertex(u)),
        (Vertex(u), Edge(e)) => keep(u == g.source(e), Edge(e)),
        (Vertex(u), Ghost(e)) => keep(u == g.range(e), Ghost(e)),
        (Edge(e), Vertex(u)) => keep(g.range(e) == u, Edge(e)),
        (Ghost(e), Vertex(u)) => keep(g.source(e) == u, Ghost(e)),
        (Edge(e), Edge(f)) => (g.range(e) != g.source(f)).then(Vec::new),
        (Ghost(e), Ghost(f)) => (g.source(e) != g.range(f)).then(Vec::new),
        (Ghost(e), Edge(f)) => keep(e == f, Vertex(g.range(e))),
        (Edge(e), Ghost(f)) => {
            if g.range(e) != g.range(f) {
                Some(Vec::new())
            } else if e == f && g.is_special(e) {
                let v = g.source(e);
                let mut out = vec![(false, vec![Vertex(v)])];
                for &other in g.out_edges(v) {
                    if other != e {
                        out.push((true, vec![Edge(other), Ghost(other)]));
                    }
                }
                Some(out)
            } else {
                None
            }
        }
    }
}

fn irreducible_to_monomial(alg: &Algebra<'_>, w: &[Symbol]) -> Monomial {
    let g = alg.graph();
    if let [Symbol::Vertex(v)] = w {
        return Monomial::vertex(*v);
    }
    let split = w
        .iter()
        .position(|s| !matches!(s, Symbol::Edge(_)))
        .unwrap_or(w.len());
    let reals: Vec<EdgeId> = w[..split]
        .iter()
        .map(|s| match s {
            Symbol::Edge(e) => *e,
            _ => unreachable!(),
        })
        .collect();
    let mut ghosts: Vec<EdgeId> = w[split..]
        .iter()
        .map(|s| match s {
            Symbol::Ghost(e) => *e,
            other => panic!("irreducible word has {other:?} after its real part"),
        })
        .collect();
    ghosts.reverse();
    let tip = match (reals.last(), ghosts.last()) {
        (Some(&e), _) | (None, Some(&e)) => g.range(e),
        (None, None) => unreachable!("empty words are expanded before rewriting"),
    };
    let real = match reals.first() {
        Some(&e) => Path::from_parts(g.source(e), reals),
        None => Path::vertex(tip),
    };
    let ghost = match ghosts.first() {
        Some(&e) => Path::from_parts(g.source(e), ghosts),
        None => Path::vertex(tip),
    };
    Monomial { real, ghost }
}

pub(crate) fn rewrite(alg: &Algebra<'_>, raw: &RawElement, strategy: Strategy) -> Element {
    let mut rng = StdRng::seed_from_u64(match strategy {
        Strategy::Random(seed) => seed,
        _ => 0,
    });
    let mut work: Vec<(Scalar, Word)> = Vec::new();
    for (c, w) in &raw.terms {
        if w.is_empty() {
            for v in alg.graph().vertices() {
                work.push((c.clone(), vec![Symbol::Vertex(v)]));
            }
        } else {
            work.push((c.clone(), w.clone()));
        }
    }

    let mut out = Element::zero();
    while let Some((c, w)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        let mut redexes = (0..w.len().saturating_sub(1))
            .filter_map(|i| rule(alg, w[i], w[i + 1]).map(|r| (i, r)));
        let chosen = match strategy {
            Strategy::Leftmost => redexes.next(),
            Strategy::Rightmost => redexes.next_back(),
            Strategy::Random(_) => {
                let all: Vec<_> = redexes.collect();
                if all.is_empty() {
                    None
                } else {
                    let k = rng.gen_range(0..all.len());
                    all.into_iter().nth(k)
                }
            }
        };
        match chosen {
            None => out.add_term(irreducible_to_monomial(alg, &w), c),
            Some((i, replacements)) => {
                for (negate, rep) in replacements {
                    let mut next = Vec::with_capacity(w.len());
                    next.extend_from_slice(&w[..i]);
                    next.extend(rep);
                    next.extend_from_slice(&w[i + 2..]);
                    work.push((if negate { -&c } else { c.clone() }, next));
                }
            }
        }
    }
    out
}
