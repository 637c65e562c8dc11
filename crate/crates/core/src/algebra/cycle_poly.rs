use crate::algebra::{AlgebraError, Algebra, Element};
use crate::graph::{Graph, Path, VertexId};
use crate::poly::FieldPolynomial;
use crate::scalar::Field;

/// `p(g) = v + Σ λᵢ gⁱ` for a cycle `g` based at `v` and `p(0) = 1`.
///
/// A polynomial equal to `1` is always stored with the trivial cycle, so the
/// vertex `v` itself has exactly one representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclePolynomial {
    vertex: VertexId,
    cycle: Option<Path>,
    poly: FieldPolynomial,
}

impl CyclePolynomial {
    pub fn new(
        g: &Graph,
        vertex: VertexId,
        cycle: Option<Path>,
        poly: FieldPolynomial,
    ) -> Result<Self, AlgebraError> {
        if !poly.coeff(0).is_one() {
            return Err(AlgebraError::NotNormalized(poly.to_string()));
        }
        let cycle = cycle.filter(|c| !c.is_empty());
        match &cycle {
            None if !poly.is_one() => {
                return Err(AlgebraError::TrivialCycleWithTerms(poly.to_string()))
            }
            Some(c) if c.source() != vertex => {
                return Err(AlgebraError::CycleNotBased {
                    cycle: g.path_label(c),
                    vertex: g.vertex_name(vertex).to_string(),
                })
            }
            Some(c) if !g.is_cycle(c) => return Err(AlgebraError::NotACycle(g.path_label(c))),
            _ => {}
        }
        let cycle = if poly.is_one() { None } else { cycle };
        Ok(CyclePolynomial {
            vertex,
            cycle,
            poly,
        })
    }

    /// The vertex `v` (trivial cycle, `p = 1`).
    pub fn trivial(vertex: VertexId, field: Field) -> Self {
        CyclePolynomial {
            vertex,
            cycle: None,
            poly: FieldPolynomial::one(field),
        }
    }

    pub fn vertex(&self) -> VertexId {
        self.vertex
    }

    pub fn cycle(&self) -> Option<&Path> {
        self.cycle.as_ref()
    }

    pub fn poly(&self) -> &FieldPolynomial {
        &self.poly
    }

    pub fn is_trivial(&self) -> bool {
        self.cycle.is_none()
    }

    pub fn eval(&self, alg: &Algebra<'_>) -> Element {
        let g = self.cycle.clone().unwrap_or_else(|| Path::vertex(self.vertex));
        alg.poly_at_path(&self.poly, self.vertex, &g)
    }

    /// e.g. `p(x) = 1 - x at u, g = a b`.
    pub fn describe(&self, g: &Graph) -> String {
        match &self.cycle {
            None => format!("vertex {}", g.vertex_name(self.vertex)),
            Some(c) => format!(
                "p(x) = {} at {}, g = {}",
                self.poly,
                g.vertex_name(self.vertex),
                g.path_label(c)
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn evaluation() {
        let g4 = fixtures::g4();
        let alg = Algebra::new(&g4, Field::Rational);
        let v = g4.vertex("v").unwrap();
        let loop_g = g4.parse_path("g").unwrap();
        let p = FieldPolynomial::from_i64s(Field::Rational, &[1, 2]);
        let c = CyclePolynomial::new(&g4, v, Some(loop_g), p).unwrap();
        assert_eq!(alg.render(&alg.cycle_poly_eval(&c)), "2 g + v");

        let g8 = fixtures::g8();
        let alg8 = Algebra::new(&g8, Field::Rational);
        let u = g8.vertex("u").unwrap();
        let ab = g8.parse_path("a b").unwrap();
        let p = FieldPolynomial::from_i64s(Field::Rational, &[1, -1]);
        let c = CyclePolynomial::new(&g8, u, Some(ab), p).unwrap();
        assert_eq!(alg8.render(&c.eval(&alg8)), "-a b + u");

        let w = fixtures::g1().vertex("w").unwrap();
        let g1 = fixtures::g1();
        let alg1 = Algebra::new(&g1, Field::Rational);
        assert_eq!(alg1.render(&CyclePolynomial::trivial(w, Field::Rational).eval(&alg1)), "w");
    }

    #[test]
    fn invariants_are_enforced() {
        let g8 = fixtures::g8();
        let v = g8.vertex("v").unwrap();
        let ab = g8.parse_path("a b").unwrap();
        let p = FieldPolynomial::from_i64s(Field::Rational, &[1, -1]);
        assert!(matches!(
            CyclePolynomial::new(&g8, v, Some(ab.clone()), p.clone()),
            Err(AlgebraError::CycleNotBased { .. })
        ));
        assert!(matches!(
            CyclePolynomial::new(&g8, v, None, p),
            Err(AlgebraError::TrivialCycleWithTerms(_))
        ));
        let u = g8.vertex("u").unwrap();
        let bad = FieldPolynomial::from_i64s(Field::Rational, &[2, 1]);
        assert!(matches!(
            CyclePolynomial::new(&g8, u, Some(ab.clone()), bad),
            Err(AlgebraError::NotNormalized(_))
        ));
        let abab = g8.parse_path("a b a b").unwrap();
        let p = FieldPolynomial::from_i64s(Field::Rational, &[1, 1]);
        assert!(matches!(
            CyclePolynomial::new(&g8, u, Some(abab), p),
            Err(AlgebraError::NotACycle(_))
        ));
        let one = FieldPolynomial::one(Field::Rational);
        assert!(CyclePolynomial::new(&g8, u, Some(ab), one).unwrap().is_trivial());
    }
}
