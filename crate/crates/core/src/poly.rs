//! Univariate polynomials over an exact [`Field`], with the extended Euclidean
//! algorithm.

use std::fmt;

use thiserror::Error;

use crate::scalar::{Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial {0} has zero constant term and cannot be normalized to p(0) = 1")]
    ZeroConstantTerm(String),
}

/// `coeffs[i]` is the coefficient of `x^i`; trailing zeros are trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldPolynomial {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl FieldPolynomial {
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> Self {
        let mut p = FieldPolynomial { field, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        FieldPolynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::new(field, vec![field.one()])
    }

    /// `c * x^k`.
    pub fn monomial(field: Field, c: Scalar, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.field, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.field, (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(self.field, out)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let lead = divisor.leading().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = lead.inverse().expect("leading coefficient is nonzero");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.last().cloned().expect("nonempty");
            if top.is_zero() {
                rem.pop();
                continue;
            }
            let shift = rem.len() - 1 - dd;
            let c = &top * &lead_inv;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = &rem[shift + j] - &(&c * d);
            }
            quot[shift] = c;
            rem.pop();
        }
        Ok((Self::new(self.field, quot), Self::new(self.field, rem)))
    }

    pub fn divides(&self, other: &Self) -> bool {
        match other.div_rem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` a gcd (not yet normalized).
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("r1 nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        (r0, s0, t0)
    }

    /// Divides through by the constant term so that `p(0) = 1`.
    pub fn normalized_at_zero(&self) -> Result<(Self, Scalar), PolyError> {
        let c0 = self.coeff(0);
        let inv = c0
            .inverse()
            .map_err(|_| PolyError::ZeroConstantTerm(self.to_string()))?;
        Ok((self.scale(&inv), inv))
    }
}

impl fmt::Display for FieldPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "x".to_string(),
                k => format!("x^{k}"),
            };
            match (abs.is_one(), var.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (true, false) => write!(f, "{var}")?,
                (false, false) => write!(f, "{abs}{var}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> FieldPolynomial {
        FieldPolynomial::from_i64s(Field::Rational, c)
    }

    #[test]
    fn division_reconstructs() {
        let a = q(&[1, 0, 0, -1]);
        let b = q(&[1, 0, -1]);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert_eq!(quot.mul(&b).add(&rem), a);
        assert!(rem.degree().unwrap_or(0) < 2);
        assert_eq!(a.div_rem(&q(&[])), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn bezout_identity_holds() {
        let a = q(&[1, 0, -1]);
        let b = q(&[1, 0, 0, -1]);
        let (g, s, t) = a.extended_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        let (g, _) = g.normalized_at_zero().unwrap();
        assert_eq!(g, q(&[1, -1]));
    }

    #[test]
    fn zero_constant_term_is_reported() {
        assert!(q(&[0, 1]).normalized_at_zero().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(q(&[1, 0, -1]).to_string(), "1 - x^2");
        assert_eq!(q(&[0, 2, 1]).to_string(), "2x + x^2");
        assert_eq!(q(&[-3]).to_string(), "-3");
        assert_eq!(q(&[]).to_string(), "0");
    }
}
