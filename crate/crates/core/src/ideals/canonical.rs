//! Reduction of arbitrary generators to generators of the form `p(g)` at a
//! vertex, with `g` trivial or the unique closed simple path there.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Algebra, CyclePolynomial, Element, Monomial};
use crate::graph::{EdgeId, Path, VertexId};
use crate::ideals::{gcd_merge, membership_bounded, prune_dominated, Dropped, IdealError, Membership};
use crate::poly::FieldPolynomial;
use crate::scalar::Scalar;

/// Reduces a nonzero element with no ghost edges to generators `p(g)`, each
/// lying in the ideal it generates and together generating it.
pub fn canonicalize_real(alg: &Algebra<'_>, x: &Element) -> Result<Vec<CyclePolynomial>, IdealError> {
    if x.is_zero() {
        return Err(IdealError::ZeroElement);
    }
    if !x.is_real_only() {
        return Err(IdealError::GhostEdges(alg.render(x)));
    }
    let mut out = Vec::new();
    reduce_real(alg, x, &mut out)?;
    out.sort_by_key(|c| c.vertex());
    out.dedup();
    Ok(out)
}

fn reduce_real(alg: &Algebra<'_>, x: &Element, out: &mut Vec<CyclePolynomial>) -> Result<(), IdealError> {
    for part in alg.peirce_split(x) {
        let vertex_term = part.monomials().find(|m| m.is_vertex()).map(Monomial::source);
        match vertex_term {
            Some(v) => closed_group(alg, &part, v, out)?,
            None => {
                // Each term starts with an edge; e*·part keeps the terms through e.
                let leading: BTreeSet<EdgeId> = part.monomials().map(|m| m.real().edges()[0]).collect();
                for e in leading {
                    let y = alg.mul(&alg.ghost(e), &part);
                    if !y.is_zero() {
                        reduce_real(alg, &y, out)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// A corner `v·x·v` with a nonzero `v` term.
fn closed_group(
    alg: &Algebra<'_>,
    part: &Element,
    v: VertexId,
    out: &mut Vec<CyclePolynomial>,
) -> Result<(), IdealError> {
    let g = alg.graph();
    let c0 = part.coeff(&Monomial::vertex(v)).expect("vertex term present").clone();
    let inv = c0.inverse().expect("stored coefficients are nonzero");
    let part = part.scale(&inv);
    let tail: Vec<(&Path, &Scalar)> = part
        .terms()
        .filter(|(m, _)| !m.is_vertex())
        .map(|(m, c)| (m.real(), c))
        .collect();
    if tail.is_empty() {
        out.push(CyclePolynomial::trivial(v, alg.field()));
        return Ok(());
    }
    match g.csp_count_capped(v, 2) {
        0 => unreachable!("a closed path at v implies a closed simple path at v"),
        1 => {
            let cycle = g.csp_enumerate(v, g.csp_search_bound())?.remove(0);
            let mut coeffs = vec![alg.field().zero(); 1];
            coeffs[0] = alg.one();
            for (mu, c) in tail {
                let factors = g.cp_factorize(mu)?;
                debug_assert!(factors.iter().all(|f| *f == cycle));
                let k = factors.len();
                if coeffs.len() <= k {
                    coeffs.resize(k + 1, alg.field().zero());
                }
                coeffs[k] = &coeffs[k] + c;
            }
            let poly = FieldPolynomial::new(alg.field(), coeffs);
            out.push(CyclePolynomial::new(g, v, Some(cycle), poly)?);
        }
        _ => {
            // With two distinct closed simple paths g₁, g₂ at v and k|g₁| beyond
            // every term length, (g₁ᵏg₂)*·part·(g₁ᵏg₂) = v.
            let longest = part.max_len();
            let mut csps = g.csp_enumerate(v, longest + 1)?;
            if csps.len() < 2 {
                csps = g.csp_enumerate(v, g.csp_search_bound())?;
            }
            let (g1, g2) = (&csps[0], &csps[1]);
            let k = longest / g1.len() + 1;
            let conj = g1.power(k).concat(g2);
            let z = alg.product(&[&alg.path_star(&conj), &part, &alg.path(&conj)]);
            assert_eq!(z, alg.vertex(v), "conjugation by a closed path of two cycles isolates v");
            out.push(CyclePolynomial::trivial(v, alg.field()));
        }
    }
    Ok(())
}

/// `p(g*)` as a real generator: `p̃(x) = xⁿp(1/x)/λₙ` satisfies
/// `(g*)ⁿ·p̃(g) = p(g*)/λₙ` and `p̃(g) = p(g*)·gⁿ/λₙ`.
fn ghost_to_real(alg: &Algebra<'_>, c: CyclePolynomial) -> Result<CyclePolynomial, IdealError> {
    let Some(cycle) = c.cycle().cloned() else {
        return Ok(c);
    };
    let coeffs = c.poly().coeffs();
    let lead = coeffs.last().expect("nontrivial polynomial").clone();
    let inv = lead.inverse().expect("leading coefficient is nonzero");
    let reversed: Vec<Scalar> = coeffs.iter().rev().map(|a| a * &inv).collect();
    let poly = FieldPolynomial::new(alg.field(), reversed);
    Ok(CyclePolynomial::new(alg.graph(), c.vertex(), Some(cycle), poly)?)
}

fn reduce_general(alg: &Algebra<'_>, x: &Element, out: &mut Vec<CyclePolynomial>) -> Result<(), IdealError> {
    let g = alg.graph();
    for part in alg.peirce_split(x) {
        if part.is_real_only() {
            reduce_real(alg, &part, out)?;
        } else if part.is_ghost_only() {
            for c in canonicalize_real(alg, &alg.star(&part))? {
                out.push(ghost_to_real(alg, c)?);
            }
        } else {
            // The range w emits the first ghost edge, so part = Σₑ (part·e)·e*
            // and each part·e has shorter ghosts.
            let w = part.monomials().next().expect("nonzero part").range();
            for &e in g.out_edges(w) {
                let y = alg.mul(&part, &alg.edge(e));
                if !y.is_zero() {
                    reduce_general(alg, &y, out)?;
                }
            }
        }
    }
    Ok(())
}

/// Generators in canonical form together with certificates that they and the
/// input generate the same ideal.
#[derive(Debug, Clone)]
pub struct CanonicalGenerators {
    pub generators: Vec<CyclePolynomial>,
    pub dropped: Vec<(CyclePolynomial, Dropped)>,
    /// Each output generator as a member of the input ideal.
    pub outputs_in_input: Vec<Membership>,
    /// Each input generator as a member of the output ideal.
    pub inputs_in_output: Vec<Membership>,
    pub bound: usize,
}

impl CanonicalGenerators {
    pub fn fully_certified(&self) -> bool {
        self.outputs_in_input.iter().chain(&self.inputs_in_output).all(Membership::is_found)
    }

    pub fn output_elements(&self, alg: &Algebra<'_>) -> Vec<Element> {
        self.generators.iter().map(|c| c.eval(alg)).collect()
    }
}

/// Canonical generators of `<inputs>`: reduced, merged by gcd on shared
/// cycles, and pruned of rotations. Certificates in both directions are
/// searched at `bound`.
pub fn canonical_generators(
    alg: &Algebra<'_>,
    inputs: &[Element],
    bound: usize,
) -> Result<CanonicalGenerators, IdealError> {
    let mut raw = Vec::new();
    for (i, x) in inputs.iter().enumerate() {
        if x.is_zero() {
            return Err(IdealError::ZeroGenerator(i));
        }
        reduce_general(alg, x, &mut raw)?;
    }

    let mut groups: BTreeMap<(VertexId, Option<Path>), CyclePolynomial> = BTreeMap::new();
    for c in raw {
        let key = (c.vertex(), c.cycle().cloned());
        let next = match groups.remove(&key) {
            Some(prev) => gcd_merge(alg, &prev, &c)?.merged,
            None => c,
        };
        groups.insert((next.vertex(), next.cycle().cloned()), next);
    }
    let with_vertex: BTreeSet<VertexId> = groups.values().filter(|c| c.is_trivial()).map(|c| c.vertex()).collect();
    let merged: Vec<CyclePolynomial> = groups
        .into_values()
        .filter(|c| c.is_trivial() || !with_vertex.contains(&c.vertex()))
        .collect();

    let pruned = prune_dominated(alg, &merged, bound);
    let dropped = pruned
        .dropped
        .into_iter()
        .map(|d| (merged[d.index].clone(), d))
        .collect();
    let generators = pruned.kept;
    let outputs: Vec<Element> = generators.iter().map(|c| c.eval(alg)).collect();
    let outputs_in_input = outputs
        .iter()
        .map(|t| membership_bounded(alg, inputs, t, bound))
        .collect();
    let inputs_in_output = inputs
        .iter()
        .map(|t| membership_bounded(alg, &outputs, t, bound))
        .collect();
    Ok(CanonicalGenerators {
        generators,
        dropped,
        outputs_in_input,
        inputs_in_output,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Field;

    fn describe(alg: &Algebra<'_>, cs: &[CyclePolynomial]) -> Vec<String> {
        cs.iter().map(|c| c.describe(alg.graph())).collect()
    }

    #[test]
    fn real_elements() {
        let g4 = fixtures::g4();
        let alg = Algebra::new(&g4, Field::Rational);
        let cs = canonicalize_real(&alg, &alg.parse("v + g").unwrap()).unwrap();
        assert_eq!(describe(&alg, &cs), ["p(x) = 1 + x at v, g = g"]);
        let cs = canonicalize_real(&alg, &alg.parse("2 v - 2 g g").unwrap()).unwrap();
        assert_eq!(describe(&alg, &cs), ["p(x) = 1 - x^2 at v, g = g"]);

        let g6 = fixtures::g6();
        let alg = Algebra::new(&g6, Field::Rational);
        let cs = canonicalize_real(&alg, &alg.parse("e").unwrap()).unwrap();
        assert_eq!(describe(&alg, &cs), ["vertex v"]);

        let g3 = fixtures::g3();
        let alg = Algebra::new(&g3, Field::Rational);
        let cs = canonicalize_real(&alg, &alg.parse("v + f").unwrap()).unwrap();
        assert_eq!(describe(&alg, &cs), ["vertex v"]);
    }

    #[test]
    fn rejects_ghosts_and_zero() {
        let g6 = fixtures::g6();
        let alg = Algebra::new(&g6, Field::Rational);
        assert!(matches!(canonicalize_real(&alg, &alg.parse("e*").unwrap()), Err(IdealError::GhostEdges(_))));
        assert!(matches!(canonicalize_real(&alg, &Element::zero()), Err(IdealError::ZeroElement)));
    }

    #[test]
    fn generator_sets() {
        let g1 = fixtures::g1();
        let alg = Algebra::new(&g1, Field::Rational);
        let r = canonical_generators(&alg, &[alg.parse("w").unwrap()], 6).unwrap();
        assert_eq!(describe(&alg, &r.generators), ["vertex w"]);
        assert!(r.fully_certified());

        let g6 = fixtures::g6();
        let alg = Algebra::new(&g6, Field::Rational);
        let r = canonical_generators(&alg, &[alg.parse("e").unwrap()], 6).unwrap();
        assert_eq!(describe(&alg, &r.generators), ["vertex v"]);
        assert!(r.fully_certified());

        let g4 = fixtures::g4();
        let alg = Algebra::new(&g4, Field::Rational);
        let r = canonical_generators(&alg, &[alg.parse("v + g g").unwrap()], 6).unwrap();
        assert_eq!(describe(&alg, &r.generators), ["p(x) = 1 + x^2 at v, g = g"]);
        assert!(r.fully_certified());

        let g8 = fixtures::g8();
        let alg = Algebra::new(&g8, Field::Rational);
        let r = canonical_generators(&alg, &[alg.parse("u - a b").unwrap(), alg.parse("v - b a").unwrap()], 6)
            .unwrap();
        assert_eq!(describe(&alg, &r.generators), ["p(x) = 1 - x at u, g = a b"]);
        assert_eq!(r.dropped.len(), 1);
        assert!(r.fully_certified());
    }

    #[test]
    fn ghost_generators_are_reversed() {
        let g4 = fixtures::g4();
        let alg = Algebra::new(&g4, Field::Rational);
        let r = canonical_generators(&alg, &[alg.parse("v + 2 g*").unwrap()], 6).unwrap();
        assert_eq!(describe(&alg, &r.generators), ["p(x) = 1 + 1/2x at v, g = g"]);
        assert!(r.fully_certified());
    }

    #[test]
    fn mixed_corners_and_merging() {
        let g4 = fixtures::g4();
        let alg = Algebra::new(&g4, Field::Rational);
        let r = canonical_generators(&alg, &[alg.parse("v - g g").unwrap(), alg.parse("v - g g g").unwrap()], 6)
            .unwrap();
        assert_eq!(describe(&alg, &r.generators), ["p(x) = 1 - x at v, g = g"]);
        assert!(r.fully_certified());

        let g3 = fixtures::g3();
        let alg = Algebra::new(&g3, Field::Rational);
        let r = canonical_generators(&alg, &[alg.parse("f g*").unwrap()], 6).unwrap();
        assert_eq!(describe(&alg, &r.generators), ["vertex v"]);
        assert!(r.fully_certified());
    }
}
