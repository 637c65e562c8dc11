use crate::algebra::{Algebra, CyclePolynomial, Element, Monomial};
use crate::graph::Path;
use crate::ideals::{Certificate, CertificateTerm, IdealError};
use crate::poly::FieldPolynomial;

/// `q = gcd(p₁, p₂)` normalized to `q(0) = 1`, with Bézout coefficients
/// `α·p₁ + β·p₂ = q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdMerge {
    pub merged: CyclePolynomial,
    pub alpha: FieldPolynomial,
    pub beta: FieldPolynomial,
    /// The shared cycle of the inputs; `merged` drops it when `q = 1`.
    pub cycle: Option<Path>,
}

impl GcdMerge {
    /// Certificate of `q(g) ∈ <p₁(g), p₂(g)>` with generators `[p₁(g), p₂(g)]`.
    pub fn certificate(&self, alg: &Algebra<'_>) -> Certificate {
        let g = alg.graph();
        let v = self.merged.vertex();
        let mut terms = Vec::new();
        for (generator, poly) in [(0, &self.alpha), (1, &self.beta)] {
            for (i, c) in poly.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let left = match (i, &self.cycle) {
                    (0, _) | (_, None) => Monomial::vertex(v),
                    (_, Some(cycle)) => Monomial::real_path(g, cycle.power(i)),
                };
                terms.push(CertificateTerm {
                    left,
                    generator,
                    right: Monomial::vertex(v),
                    coeff: c.clone(),
                });
            }
        }
        Certificate {
            target: self.merged.eval(alg),
            terms,
        }
    }
}

/// Merges two generators on the same vertex and cycle.
///
/// Returns the vertex itself when the polynomials are coprime. A gcd with zero
/// constant term cannot occur for inputs with `p(0) = 1`; it is reported
/// rather than assumed.
pub fn gcd_merge(
    alg: &Algebra<'_>,
    first: &CyclePolynomial,
    second: &CyclePolynomial,
) -> Result<GcdMerge, IdealError> {
    let g = alg.graph();
    if first.vertex() != second.vertex() || first.cycle() != second.cycle() {
        return Err(IdealError::MismatchedCycle {
            first: first.describe(g),
            second: second.describe(g),
        });
    }
    let (d, s, t) = first.poly().extended_gcd(second.poly());
    let (q, inv) = d
        .normalized_at_zero()
        .map_err(|_| IdealError::ZeroConstantGcd(d.to_string()))?;
    let merged = CyclePolynomial::new(g, first.vertex(), first.cycle().cloned(), q)?;
    Ok(GcdMerge {
        merged,
        alpha: s.scale(&inv),
        beta: t.scale(&inv),
        cycle: first.cycle().cloned(),
    })
}

/// `[p₁(g), p₂(g)]` as elements, matching the generator indices of
/// [`GcdMerge::certificate`].
pub fn merge_inputs(
    alg: &Algebra<'_>,
    first: &CyclePolynomial,
    second: &CyclePolynomial,
) -> Vec<Element> {
    vec![first.eval(alg), second.eval(alg)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Field;

    fn at_loop(field: Field, coeffs: &[i64]) -> (crate::Graph, CyclePolynomial) {
        let g = fixtures::g4();
        let v = g.vertex("v").unwrap();
        let loop_g = g.parse_path("g").unwrap();
        let c = CyclePolynomial::new(&g, v, Some(loop_g), FieldPolynomial::from_i64s(field, coeffs))
            .unwrap();
        (g, c)
    }

    #[test]
    fn equal_inputs_merge_to_themselves() {
        let (g, c) = at_loop(Field::Rational, &[1, -1]);
        let alg = Algebra::new(&g, Field::Rational);
        let m = gcd_merge(&alg, &c, &c).unwrap();
        assert_eq!(m.merged, c);
        assert!(m.certificate(&alg).verify(&alg, &merge_inputs(&alg, &c, &c)));
    }

    #[test]
    fn common_factor_over_rationals_and_gf5() {
        for field in [Field::Rational, Field::prime(5).unwrap()] {
            let (g, a) = at_loop(field, &[1, 0, -1]);
            let (_, b) = at_loop(field, &[1, 0, 0, -1]);
            let alg = Algebra::new(&g, field);
            let m = gcd_merge(&alg, &a, &b).unwrap();
            assert_eq!(m.merged.poly(), &FieldPolynomial::from_i64s(field, &[1, -1]));
            assert!(m.certificate(&alg).verify(&alg, &merge_inputs(&alg, &a, &b)));
        }
    }

    #[test]
    fn coprime_inputs_give_the_vertex() {
        let (g, a) = at_loop(Field::Rational, &[1, 1]);
        let (_, b) = at_loop(Field::Rational, &[1, -1]);
        let alg = Algebra::new(&g, Field::Rational);
        let m = gcd_merge(&alg, &a, &b).unwrap();
        assert!(m.merged.is_trivial());
        let cert = m.certificate(&alg);
        assert_eq!(alg.render(&cert.target), "v");
        assert!(cert.verify(&alg, &merge_inputs(&alg, &a, &b)));
    }

    #[test]
    fn mismatched_cycles_are_rejected() {
        let g = fixtures::g3();
        let alg = Algebra::new(&g, Field::Rational);
        let v = g.vertex("v").unwrap();
        let p = FieldPolynomial::from_i64s(Field::Rational, &[1, 1]);
        let f = CyclePolynomial::new(&g, v, Some(g.parse_path("f").unwrap()), p.clone()).unwrap();
        let h = CyclePolynomial::new(&g, v, Some(g.parse_path("g").unwrap()), p).unwrap();
        assert!(matches!(
            gcd_merge(&alg, &f, &h),
            Err(IdealError::MismatchedCycle { .. })
        ));
    }
}
