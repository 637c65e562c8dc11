use std::collections::BTreeMap;

use crate::algebra::{Algebra, Element};
use crate::closures::{closure, is_hereditary, is_saturated, VertexSet};
use crate::graph::VertexId;
use crate::ideals::{membership_bounded, Certificate, CertificateTerm, IdealError, Membership};
use crate::Monomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexTrace {
    pub vertex: VertexId,
    pub membership: Membership,
}

/// For each vertex `u`, whether `u ∈ <H>` at the search bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedTrace {
    pub set: VertexSet,
    pub generators: Vec<Element>,
    pub entries: Vec<VertexTrace>,
    pub bound: usize,
}

impl GradedTrace {
    pub fn found(&self) -> VertexSet {
        let mut s = VertexSet::new();
        for e in &self.entries {
            if e.membership.is_found() {
                s.insert(e.vertex);
            }
        }
        s
    }

    pub fn report(&self, alg: &Algebra<'_>) -> String {
        let g = alg.graph();
        let mut out = format!("H = {} (bound {})\n", self.set.label(g), self.bound);
        for e in &self.entries {
            let line = match &e.membership {
                Membership::Found(c) => format!("Found: {}", c.render(alg, &self.generators)),
                other => other.render(alg, &self.generators),
            };
            out.push_str(&format!("{}: {line}\n", g.vertex_name(e.vertex)));
        }
        out
    }

    pub fn to_json(&self, alg: &Algebra<'_>) -> serde_json::Value {
        let g = alg.graph();
        serde_json::json!({
            "set": self.set.names(g),
            "bound": self.bound,
            "generators": self.generators.iter().map(|x| alg.render(x)).collect::<Vec<_>>(),
            "vertices": self.entries.iter().map(|e| serde_json::json!({
                "vertex": g.vertex_name(e.vertex),
                "membership": e.membership.to_json(alg),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Runs the bounded membership search for every vertex against the ideal
/// generated by a hereditary saturated set.
pub fn graded_vertex_trace(alg: &Algebra<'_>, set: &VertexSet, bound: usize) -> Result<GradedTrace, IdealError> {
    let g = alg.graph();
    if !is_hereditary(g, set) || !is_saturated(g, set) {
        return Err(IdealError::NotHereditarySaturated(set.label(g)));
    }
    let generators: Vec<Element> = set.iter().map(|v| alg.vertex(v)).collect();
    let entries = g
        .vertices()
        .map(|u| VertexTrace {
            vertex: u,
            membership: membership_bounded(alg, &generators, &alg.vertex(u), bound),
        })
        .collect();
    Ok(GradedTrace {
        set: set.clone(),
        generators,
        entries,
        bound,
    })
}

/// Membership of a closure vertex in `<X>`, built along the closure levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureCertificate {
    pub vertex: VertexId,
    pub level: usize,
    pub certificate: Certificate,
}

/// Certificates over the generators `X` (in set order) for every vertex of
/// the closure of `X`. A vertex reached by `μ` from `x` is `μ*·x·μ`; a vertex
/// added by saturation is `Σ e·(cert of r(e))·e*` over its out-edges.
pub fn closure_certificates(alg: &Algebra<'_>, x: &VertexSet) -> Vec<ClosureCertificate> {
    let g = alg.graph();
    let trace = closure(g, x);
    let seeds: Vec<VertexId> = x.iter().collect();
    let mut certs: BTreeMap<VertexId, Certificate> = BTreeMap::new();
    let mut out = Vec::new();
    for (level, set) in trace.levels.iter().enumerate() {
        for w in set.iter() {
            if certs.contains_key(&w) {
                continue;
            }
            let cert = if level == 0 {
                let (k, mu) = seeds
                    .iter()
                    .enumerate()
                    .find_map(|(k, &s)| g.shortest_path(s, w).map(|p| (k, p)))
                    .expect("level zero is reachable from the seeds");
                Certificate {
                    target: alg.vertex(w),
                    terms: vec![CertificateTerm {
                        left: Monomial::ghost_path(g, mu.clone()),
                        generator: k,
                        right: Monomial::real_path(g, mu),
                        coeff: alg.one(),
                    }],
                }
            } else {
                let mut terms = Vec::new();
                for &e in g.out_edges(w) {
                    let inner = &certs[&g.range(e)];
                    for t in &inner.terms {
                        let left = alg.mul(&alg.edge(e), &alg.monomial(t.left.clone()));
                        let right = alg.mul(&alg.monomial(t.right.clone()), &alg.ghost(e));
                        for (a, ca) in left.terms() {
                            for (b, cb) in right.terms() {
                                terms.push(CertificateTerm {
                                    left: a.clone(),
                                    generator: t.generator,
                                    right: b.clone(),
                                    coeff: &(&t.coeff * ca) * cb,
                                });
                            }
                        }
                    }
                }
                Certificate {
                    target: alg.vertex(w),
                    terms,
                }
            };
            certs.insert(w, cert.clone());
            out.push(ClosureCertificate {
                vertex: w,
                level,
                certificate: cert,
            });
        }
    }
    out
}
