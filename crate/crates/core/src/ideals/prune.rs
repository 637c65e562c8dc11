use crate::algebra::{Algebra, CyclePolynomial, Monomial};
use crate::graph::Path;
use crate::ideals::{Certificate, CertificateTerm};

/// A generator `q(h)` at `v` removed because `q(h) = μ*·p(g)·μ` for a kept
/// generator `p(g)` at `u`, where `g = μν` and `h = νμ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dropped {
    /// Index into the input list.
    pub index: usize,
    /// Index into the input list of the generator that covers it.
    pub dominated_by: usize,
    pub connector: Path,
    /// Over the input list.
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruneResult {
    pub kept: Vec<CyclePolynomial>,
    pub dropped: Vec<Dropped>,
}

/// The connector `μ` with `g = μν`, `h = νμ`, if `h` is the rotation of `g`
/// starting at the base of `h`.
fn rotation_connector(outer: &CyclePolynomial, inner: &CyclePolynomial, bound: usize, alg: &Algebra<'_>) -> Option<Path> {
    let g = alg.graph();
    let (cg, ch) = (outer.cycle()?, inner.cycle()?);
    if outer.vertex() == inner.vertex() || cg.len() != ch.len() || outer.poly() != inner.poly() {
        return None;
    }
    let pos = (0..cg.len()).find(|&i| g.source(cg.edges()[i]) == inner.vertex())?;
    let mu = cg.prefix(pos);
    if 2 * mu.len() > bound {
        return None;
    }
    let nu = cg.suffix(g, pos);
    (nu.concat(&mu) == *ch).then_some(mu)
}

/// Removes generators implied by another through a connecting path of
/// sandwich length `2|μ| ≤ bound`. Later generators are tested first, so of
/// two mutually dominating generators the earlier one survives.
pub fn prune_dominated(alg: &Algebra<'_>, gens: &[CyclePolynomial], bound: usize) -> PruneResult {
    let g = alg.graph();
    let mut alive = vec![true; gens.len()];
    let mut dropped = Vec::new();
    let evals: Vec<_> = gens.iter().map(|c| c.eval(alg)).collect();
    for j in (0..gens.len()).rev() {
        if gens[j].is_trivial() {
            continue;
        }
        for i in 0..gens.len() {
            if i == j || !alive[i] {
                continue;
            }
            let Some(mu) = rotation_connector(&gens[i], &gens[j], bound, alg) else {
                continue;
            };
            let certificate = Certificate {
                target: evals[j].clone(),
                terms: vec![CertificateTerm {
                    left: Monomial::ghost_path(g, mu.clone()),
                    generator: i,
                    right: Monomial::real_path(g, mu.clone()),
                    coeff: alg.one(),
                }],
            };
            if !certificate.verify(alg, &evals) {
                continue;
            }
            alive[j] = false;
            dropped.push(Dropped {
                index: j,
                dominated_by: i,
                connector: mu,
                certificate,
            });
            break;
        }
    }
    dropped.reverse();
    PruneResult {
        kept: gens
            .iter()
            .zip(&alive)
            .filter(|(_, a)| **a)
            .map(|(c, _)| c.clone())
            .collect(),
        dropped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poly::FieldPolynomial;
    use crate::scalar::Field;

    fn two_cycle(field: Field) -> (crate::Graph, CyclePolynomial, CyclePolynomial) {
        let g = fixtures::g8();
        let p = FieldPolynomial::from_i64s(field, &[1, -1]);
        let at_u = CyclePolynomial::new(&g, g.vertex("u").unwrap(), Some(g.parse_path("a b").unwrap()), p.clone())
            .unwrap();
        let at_v = CyclePolynomial::new(&g, g.vertex("v").unwrap(), Some(g.parse_path("b a").unwrap()), p).unwrap();
        (g, at_u, at_v)
    }

    #[test]
    fn rotated_generator_is_dropped() {
        let (g, at_u, at_v) = two_cycle(Field::Rational);
        let alg = Algebra::new(&g, Field::Rational);
        let r = prune_dominated(&alg, &[at_u.clone(), at_v], 6);
        assert_eq!(r.kept, vec![at_u]);
        assert_eq!(r.dropped.len(), 1);
        let d = &r.dropped[0];
        assert_eq!((d.index, d.dominated_by), (1, 0));
        assert_eq!(g.path_label(&d.connector), "a");
    }

    #[test]
    fn bound_limits_connectors() {
        let (g, at_u, at_v) = two_cycle(Field::Rational);
        let alg = Algebra::new(&g, Field::Rational);
        let r = prune_dominated(&alg, &[at_u, at_v], 1);
        assert_eq!(r.kept.len(), 2);
    }

    #[test]
    fn different_polynomials_are_kept() {
        let (g, at_u, _) = two_cycle(Field::Rational);
        let alg = Algebra::new(&g, Field::Rational);
        let p = FieldPolynomial::from_i64s(Field::Rational, &[1, 1]);
        let other = CyclePolynomial::new(&g, g.vertex("v").unwrap(), Some(g.parse_path("b a").unwrap()), p).unwrap();
        assert_eq!(prune_dominated(&alg, &[at_u, other], 6).kept.len(), 2);
    }
}
