//! Bounded search for `t ∈ <x₁, …, xₘ>` by exact elimination over the span of
//! sandwiches `a·xₖ·b` with normal monomials `a`, `b` and `|a| + |b| ≤ N`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraError, Element, Monomial};
use crate::graph::{Graph, Path, VertexId};
use crate::scalar::Scalar;

/// One summand `coeff · left · generator · right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateTerm {
    pub left: Monomial,
    pub generator: usize,
    pub right: Monomial,
    pub coeff: Scalar,
}

/// `target = Σ coeff · left · gens[generator] · right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub target: Element,
    pub terms: Vec<CertificateTerm>,
}

/// Plain-text form of a certificate, for re-checking outside this crate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub target: String,
    /// `(left, generator index, right, scalar)`.
    pub terms: Vec<(String, usize, String, String)>,
}

impl Certificate {
    pub fn evaluate(&self, alg: &Algebra<'_>, gens: &[Element]) -> Element {
        let mut acc = Element::zero();
        for t in &self.terms {
            let left = alg.monomial(t.left.clone());
            let right = alg.monomial(t.right.clone());
            let x = alg.product(&[&left, &gens[t.generator], &right]);
            acc.add_assign(&x.scale(&t.coeff));
        }
        acc
    }

    pub fn verify(&self, alg: &Algebra<'_>, gens: &[Element]) -> bool {
        self.evaluate(alg, gens) == self.target
    }

    /// Largest `|a| + |b|` used.
    pub fn max_len(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.left.len() + t.right.len())
            .max()
            .unwrap_or(0)
    }

    /// e.g. `v = g* · (v + f) · g`.
    pub fn render(&self, alg: &Algebra<'_>, gens: &[Element]) -> String {
        let g = alg.graph();
        let body = if self.terms.is_empty() {
            "0".to_string()
        } else {
            self.terms
                .iter()
                .map(|t| {
                    let c = if t.coeff.is_one() {
                        String::new()
                    } else {
                        format!("({}) ", t.coeff)
                    };
                    format!(
                        "{c}{} · ({}) · {}",
                        t.left.label(g),
                        alg.render(&gens[t.generator]),
                        t.right.label(g)
                    )
                })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        format!("{} = {}", alg.render(&self.target), body)
    }

    pub fn to_record(&self, alg: &Algebra<'_>) -> CertificateRecord {
        let g = alg.graph();
        CertificateRecord {
            target: alg.render(&self.target),
            terms: self
                .terms
                .iter()
                .map(|t| (t.left.label(g), t.generator, t.right.label(g), t.coeff.to_string()))
                .collect(),
        }
    }
}

impl CertificateRecord {
    /// Re-evaluates the record through the expression parser.
    pub fn recheck(&self, alg: &Algebra<'_>, gens: &[Element]) -> Result<bool, AlgebraError> {
        let target = alg.parse(&self.target)?;
        let mut acc = Element::zero();
        for (left, k, right, c) in &self.terms {
            let Some(x) = gens.get(*k) else {
                return Ok(false);
            };
            let c = alg.field().parse_scalar(c)?;
            let prod = alg.product(&[&alg.parse(left)?, x, &alg.parse(right)?]);
            acc.add_assign(&prod.scale(&c));
        }
        Ok(acc == target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Found(Certificate),
    /// No combination exists at this bound. When `complete` is set the graph
    /// is acyclic and the bound covers every monomial, so this is a proof of
    /// non-membership rather than evidence.
    NotFoundAtBound { bound: usize, complete: bool },
}

impl Membership {
    pub fn is_found(&self) -> bool {
        matches!(self, Membership::Found(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Membership::Found(c) => Some(c),
            Membership::NotFoundAtBound { .. } => None,
        }
    }

    pub fn render(&self, alg: &Algebra<'_>, gens: &[Element]) -> String {
        match self {
            Membership::Found(c) => format!("Found\n{}", c.render(alg, gens)),
            Membership::NotFoundAtBound { bound, complete } => {
                if *complete {
                    format!("NotFoundAtBound({bound}) (complete: not a member)")
                } else {
                    format!("NotFoundAtBound({bound})")
                }
            }
        }
    }

    pub fn to_json(&self, alg: &Algebra<'_>) -> serde_json::Value {
        match self {
            Membership::Found(c) => serde_json::json!({
                "verdict": "Found",
                "certificate": c.to_record(alg),
            }),
            Membership::NotFoundAtBound { bound, complete } => serde_json::json!({
                "verdict": "NotFoundAtBound",
                "bound": bound,
                "complete": complete,
            }),
        }
    }
}

/// True when every sandwich is covered at `bound`: on an acyclic graph all
/// normal monomials have length at most twice the longest path.
pub fn search_is_complete(g: &Graph, bound: usize) -> bool {
    g.longest_path_len().is_some_and(|l| bound >= 4 * l)
}

/// Normal monomials `μν*` with `s(μ) ∈ from`, `s(ν) ∈ to`, `|μ| + |ν| ≤ bound`,
/// bucketed by length.
fn monomials_between(
    g: &Graph,
    from: &BTreeSet<VertexId>,
    to: &BTreeSet<VertexId>,
    bound: usize,
) -> Vec<Vec<Monomial>> {
    let by_range = |set: &BTreeSet<VertexId>| {
        let mut m: BTreeMap<VertexId, Vec<Path>> = BTreeMap::new();
        for &v in set {
            for p in g.paths_from(v, bound) {
                m.entry(p.range(g)).or_default().push(p);
            }
        }
        m
    };
    let reals = by_range(from);
    let ghosts = by_range(to);
    let mut out = vec![Vec::new(); bound + 1];
    for (r, mus) in &reals {
        let Some(nus) = ghosts.get(r) else { continue };
        for mu in mus {
            for nu in nus {
                if mu.len() + nu.len() > bound {
                    continue;
                }
                let m = Monomial {
                    real: mu.clone(),
                    ghost: nu.clone(),
                };
                if m.is_normal(g) {
                    out[m.len()].push(m);
                }
            }
        }
    }
    for bucket in &mut out {
        bucket.sort();
    }
    out
}

struct Row {
    vec: Element,
    combo: BTreeMap<usize, Scalar>,
}

/// Row-echelon basis keyed by leading (largest) monomial.
#[derive(Default)]
struct Echelon {
    rows: Vec<Row>,
    pivots: BTreeMap<Monomial, usize>,
}

fn add_scaled(into: &mut BTreeMap<usize, Scalar>, from: &BTreeMap<usize, Scalar>, c: &Scalar) {
    for (k, a) in from {
        let v = into.remove(k).map_or_else(|| a * c, |b| &b + &(a * c));
        if !v.is_zero() {
            into.insert(*k, v);
        }
    }
}

impl Echelon {
    /// Reduces `vec` (with its combination) until its leading monomial has no
    /// pivot or it vanishes.
    fn reduce(&self, mut vec: Element, mut combo: BTreeMap<usize, Scalar>) -> Row {
        while let Some((lead, c)) = vec.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let Some(&r) = self.pivots.get(&lead) else { break };
            let row = &self.rows[r];
            let factor = -&c;
            vec = vec.add(&row.vec.scale(&factor));
            add_scaled(&mut combo, &row.combo, &factor);
        }
        Row { vec, combo }
    }

    fn insert(&mut self, vec: Element, index: usize, one: Scalar) {
        let row = self.reduce(vec, BTreeMap::from([(index, one)]));
        if let Some((lead, c)) = row.vec.leading() {
            let lead = lead.clone();
            let inv = c.inverse().expect("nonzero leading coefficient");
            let mut combo = BTreeMap::new();
            add_scaled(&mut combo, &row.combo, &inv);
            self.pivots.insert(lead, self.rows.len());
            self.rows.push(Row {
                vec: row.vec.scale(&inv),
                combo,
            });
        }
    }
}

fn proportional(p: &Element, t: &Element) -> Option<Scalar> {
    if p.len() != t.len() {
        return None;
    }
    let mut ratio: Option<Scalar> = None;
    for ((m1, a), (m2, b)) in t.terms().zip(p.terms()) {
        if m1 != m2 {
            return None;
        }
        let r = a.div(b).ok()?;
        match &ratio {
            None => ratio = Some(r),
            Some(q) if *q == r => {}
            Some(_) => return None,
        }
    }
    ratio
}

/// Searches for a certificate of `target ∈ <gens>` using sandwiches of total
/// monomial length at most `bound`, level by level. Only sandwiches whose outer
/// vertices match the corners of `target` are generated; that loses nothing
/// because `target` is the sum of its corners.
pub fn membership_bounded(
    alg: &Algebra<'_>,
    gens: &[Element],
    target: &Element,
    bound: usize,
) -> Membership {
    let g = alg.graph();
    if target.is_zero() {
        return Membership::Found(Certificate {
            target: target.clone(),
            terms: Vec::new(),
        });
    }
    let t_src: BTreeSet<VertexId> = target.monomials().map(Monomial::source).collect();
    let t_rng: BTreeSet<VertexId> = target.monomials().map(Monomial::range).collect();

    struct Side {
        lefts: Vec<Vec<(Monomial, Element)>>,
        rights: Vec<Vec<Monomial>>,
    }
    let sides: Vec<Side> = gens
        .iter()
        .map(|x| {
            let x_src: BTreeSet<VertexId> = x.monomials().map(Monomial::source).collect();
            let x_rng: BTreeSet<VertexId> = x.monomials().map(Monomial::range).collect();
            let lefts = monomials_between(g, &t_src, &x_src, bound)
                .into_iter()
                .map(|bucket| {
                    bucket
                        .into_iter()
                        .filter_map(|a| {
                            let ax = alg.mul(&alg.monomial(a.clone()), x);
                            (!ax.is_zero()).then_some((a, ax))
                        })
                        .collect()
                })
                .collect();
            let rights = monomials_between(g, &x_rng, &t_rng, bound);
            Side { lefts, rights }
        })
        .collect();

    let mut products: Vec<(Monomial, usize, Monomial)> = Vec::new();
    let mut echelon = Echelon::default();
    let mut seen: HashSet<Element> = HashSet::new();
    for level in 0..=bound {
        for (k, side) in sides.iter().enumerate() {
            for i in 0..=level {
                for (a, ax) in &side.lefts[i] {
                    for b in &side.rights[level - i] {
                        let p = alg.mul(ax, &alg.monomial(b.clone()));
                        if p.is_zero() {
                            continue;
                        }
                        if let Some(c) = proportional(&p, target) {
                            let cert = Certificate {
                                target: target.clone(),
                                terms: vec![CertificateTerm {
                                    left: a.clone(),
                                    generator: k,
                                    right: b.clone(),
                                    coeff: c,
                                }],
                            };
                            debug_assert!(cert.verify(alg, gens));
                            return Membership::Found(cert);
                        }
                        if !seen.insert(p.clone()) {
                            continue;
                        }
                        products.push((a.clone(), k, b.clone()));
                        echelon.insert(p, products.len() - 1, alg.one());
                    }
                }
            }
        }
        let reduced = echelon.reduce(target.clone(), BTreeMap::new());
        if reduced.vec.is_zero() {
            // target - Σ c·row = 0 accumulates combo = -Σ c·(row combos).
            let terms = reduced
                .combo
                .iter()
                .map(|(&idx, c)| {
                    let (a, k, b) = &products[idx];
                    CertificateTerm {
                        left: a.clone(),
                        generator: *k,
                        right: b.clone(),
                        coeff: -c,
                    }
                })
                .collect();
            let cert = Certificate {
                target: target.clone(),
                terms,
            };
            assert!(cert.verify(alg, gens), "elimination produced an invalid certificate");
            return Membership::Found(cert);
        }
    }
    Membership::NotFoundAtBound {
        bound,
        complete: search_is_complete(g, bound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Field;

    #[test]
    fn vertex_in_its_own_ideal() {
        let g = fixtures::g4();
        let alg = Algebra::new(&g, Field::Rational);
        let v = alg.parse("v").unwrap();
        let m = membership_bounded(&alg, std::slice::from_ref(&v), &v, 6);
        let cert = m.certificate().unwrap();
        assert_eq!(cert.render(&alg, std::slice::from_ref(&v)), "v = v · (v) · v");
    }

    #[test]
    fn rose_vertex_from_v_plus_f() {
        let g = fixtures::g3();
        let alg = Algebra::new(&g, Field::Rational);
        let gens = vec![alg.parse("v + f").unwrap()];
        let v = alg.parse("v").unwrap();
        let m = membership_bounded(&alg, &gens, &v, 2);
        let cert = m.certificate().expect("found at bound 2");
        assert!(cert.verify(&alg, &gens));
        assert_eq!(cert.render(&alg, &gens), "v = g* · (f + v) · g");
        assert!(!membership_bounded(&alg, &gens, &v, 1).is_found());
    }

    #[test]
    fn sink_ideal_misses_source() {
        let g = fixtures::g1();
        let alg = Algebra::new(&g, Field::Rational);
        let gens = vec![alg.parse("w").unwrap()];
        let v = alg.parse("v").unwrap();
        assert_eq!(
            membership_bounded(&alg, &gens, &v, 6),
            Membership::NotFoundAtBound {
                bound: 6,
                complete: false
            }
        );
    }

    #[test]
    fn elimination_combines_several_sandwiches() {
        // e e* alone is not a sandwich of `e` of the form a·e·b with a single
        // term proportional to u + v; the sum needs two.
        let g = fixtures::g6();
        let alg = Algebra::new(&g, Field::Rational);
        let gens = vec![alg.parse("e").unwrap()];
        let t = alg.parse("u + 2 v").unwrap();
        let m = membership_bounded(&alg, &gens, &t, 4);
        let cert = m.certificate().expect("u + 2v lies in <e>");
        assert!(cert.terms.len() >= 2);
        assert!(cert.verify(&alg, &gens));
        assert!(cert.to_record(&alg).recheck(&alg, &gens).unwrap());
    }

    #[test]
    fn complete_search_on_acyclic_graph() {
        let g = fixtures::g6();
        let alg = Algebra::new(&g, Field::Rational);
        let gens = vec![alg.parse("e").unwrap()];
        let t = alg.parse("e*").unwrap();
        assert!(membership_bounded(&alg, &gens, &t, 4).is_found());
        assert!(search_is_complete(&g, 4));
        assert!(!search_is_complete(&g, 3));
    }
}
