use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::algebra::Monomial;
use crate::scalar::Scalar;

/// A finite K-linear combination of normal monomials. Zero coefficients are
/// never stored, so map equality is equality in the algebra.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn from_term(m: Monomial, c: Scalar) -> Element {
        let mut x = Element::zero();
        x.add_term(m, c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    /// The largest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.last_key_value()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// Adds `c·m`; the caller guarantees `m` is normal.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (m, c) in other.terms() {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        for (m, a) in self.terms() {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    /// Every monomial has an empty ghost part.
    pub fn is_real_only(&self) -> bool {
        self.monomials().all(Monomial::is_real)
    }

    /// Every monomial has an empty real part.
    pub fn is_ghost_only(&self) -> bool {
        self.monomials().all(Monomial::is_ghost)
    }

    pub fn max_len(&self) -> usize {
        self.monomials().map(Monomial::len).max().unwrap_or(0)
    }

    pub fn max_ghost_len(&self) -> usize {
        self.monomials().map(|m| m.ghost.len()).max().unwrap_or(0)
    }
}
