//! Exact values of the form `sum_k q_k * pi^k` with rational `q_k`.
//!
//! Sums of products of even zeta values live here exactly: `zeta(2n)` is a
//! rational multiple of `pi^{2n}`, so an identity among them is an identity
//! among polynomials in `pi` and can be checked with exact equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::{Float, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PiGraded {
    /// power of pi -> nonzero rational coefficient
    terms: BTreeMap<i32, Rational>,
}

impl PiGraded {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: Rational, pi_power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(pi_power, coeff);
        }
        Self { terms }
    }

    pub fn rational(q: Rational) -> Self {
        Self::monomial(q, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coefficient, power)` pairs in increasing power order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, i32)> {
        self.terms.iter().map(|(p, q)| (q, *p))
    }

    /// The single `(q, k)` when the value is `q * pi^k`; zero maps to `(0, 0)`.
    pub fn as_monomial(&self) -> Option<(Rational, i32)> {
        match self.terms.len() {
            0 => Some((Rational::new(), 0)),
            1 => self.terms.iter().next().map(|(p, q)| (q.clone(), *p)),
            _ => None,
        }
    }

    /// The rational value when no power of pi survives.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.as_monomial() {
            Some((q, 0)) => Some(q),
            Some((q, _)) if q.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(p, c)| (*p, Rational::from(c * q))).collect() }
    }

    pub fn shift_pi(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(p, c)| (p + k, c.clone())).collect() }
    }

    pub fn to_float(&self, pi: &Float) -> Float {
        let mut acc = Float::new(pi.prec());
        for (p, q) in &self.terms {
            let pk = Float::with_val(pi.prec(), pi.pow(*p));
            acc += pk * Float::with_val(pi.prec(), q);
        }
        acc
    }

    fn add_term(&mut self, pi_power: i32, coeff: Rational) {
        let entry = self.terms.entry(pi_power).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&pi_power);
        }
    }
}

impl From<Rational> for PiGraded {
    fn from(q: Rational) -> Self {
        Self::rational(q)
    }
}

impl Add for &PiGraded {
    type Output = PiGraded;
    fn add(self, rhs: &PiGraded) -> PiGraded {
        let mut out = self.clone();
        for (p, q) in &rhs.terms {
            out.add_term(*p, q.clone());
        }
        out
    }
}

impl Add for PiGraded {
    type Output = PiGraded;
    fn add(self, rhs: PiGraded) -> PiGraded {
        &self + &rhs
    }
}

impl Sub for &PiGraded {
    type Output = PiGraded;
    fn sub(self, rhs: &PiGraded) -> PiGraded {
        self + &(-rhs)
    }
}

impl Sub for PiGraded {
    type Output = PiGraded;
    fn sub(self, rhs: PiGraded) -> PiGraded {
        &self - &rhs
    }
}

impl Neg for &PiGraded {
    type Output = PiGraded;
    fn neg(self) -> PiGraded {
        PiGraded { terms: self.terms.iter().map(|(p, q)| (*p, Rational::from(-q))).collect() }
    }
}

impl Neg for PiGraded {
    type Output = PiGraded;
    fn neg(self) -> PiGraded {
        -&self
    }
}

impl Mul for &PiGraded {
    type Output = PiGraded;
    fn mul(self, rhs: &PiGraded) -> PiGraded {
        let mut out = PiGraded::zero();
        for (pa, qa) in &self.terms {
            for (pb, qb) in &rhs.terms {
                out.add_term(pa + pb, Rational::from(qa * qb));
            }
        }
        out
    }
}

impl Mul for PiGraded {
    type Output = PiGraded;
    fn mul(self, rhs: PiGraded) -> PiGraded {
        &self * &rhs
    }
}

impl std::iter::Sum for PiGraded {
    fn sum<I: Iterator<Item = PiGraded>>(iter: I) -> Self {
        iter.fold(PiGraded::zero(), |a, b| a + b)
    }
}

impl fmt::Display for PiGraded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match *p {
                0 => write!(f, "{q}")?,
                1 => write!(f, "({q})*pi")?,
                _ => write!(f, "({q})*pi^{p}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = PiGraded::monomial(q(1, 6), 2);
        let b = PiGraded::monomial(q(1, 6), 2);
        assert!((&a - &b).is_zero());
        assert_eq!((&a + &b).as_monomial(), Some((q(1, 3), 2)));
    }

    #[test]
    fn products_add_grades() {
        let z2 = PiGraded::monomial(q(1, 6), 2);
        let z4 = PiGraded::monomial(q(1, 90), 4);
        assert_eq!((&z2 * &z4).as_monomial(), Some((q(1, 540), 6)));
        let mixed = &PiGraded::rational(q(7, 10)) + &PiGraded::monomial(q(1, 450), 8);
        assert!(mixed.as_monomial().is_none());
        assert!(mixed.as_rational().is_none());
        assert_eq!(mixed.to_string(), "7/10 + (1/450)*pi^8");
    }

    #[test]
    fn numeric_value() {
        let pi = Float::with_val(128, rug::float::Constant::Pi);
        let z2 = PiGraded::monomial(q(1, 6), 2).to_float(&pi);
        assert!((z2 - 1.6449340668482264f64).abs() < 1e-15);
    }
}
