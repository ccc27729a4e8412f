use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::qpoly::forward_binop;
use super::QPoly;

/// A polynomial in `x` whose coefficients are [`QPoly`] values.
///
/// `coeffs[i]` is the coefficient of `x^i`; the last entry is never the zero
/// `QPoly`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct XQPoly {
    coeffs: Vec<QPoly>,
}

fn trim(coeffs: &mut Vec<QPoly>) {
    while coeffs.last().is_some_and(QPoly::is_zero) {
        coeffs.pop();
    }
}

impl XQPoly {
    pub fn zero() -> Self {
        XQPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(QPoly::one())
    }

    pub fn constant(c: QPoly) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::x_pow(1)
    }

    /// `x^e`.
    pub fn x_pow(e: usize) -> Self {
        Self::monomial(QPoly::one(), e)
    }

    /// `c * x^e`.
    pub fn monomial(c: QPoly, e: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![QPoly::zero(); e + 1];
        coeffs[e] = c;
        XQPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<QPoly>) -> Self {
        trim(&mut coeffs);
        XQPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> QPoly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplies every coefficient by the `QPoly` `c`.
    pub fn scale(&self, c: &QPoly) -> XQPoly {
        XQPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^e`.
    pub fn shift(&self, e: usize) -> XQPoly {
        if self.is_zero() {
            return XQPoly::zero();
        }
        let mut coeffs = vec![QPoly::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        XQPoly { coeffs }
    }

    /// Substitutes `x := s`, leaving a polynomial in `q`.
    pub fn eval_x(&self, s: &BigInt) -> QPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(QPoly::zero(), |acc, c| acc.scale(s) + c)
    }

    /// Substitutes `q := v` in every coefficient.
    pub fn eval_q(&self, v: &BigInt) -> XQPoly {
        XQPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| QPoly::constant(c.eval(v)))
                .collect(),
        )
    }

    fn add_ref(&self, rhs: &XQPoly) -> XQPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        XQPoly::from_coeffs(coeffs)
    }

    fn sub_ref(&self, rhs: &XQPoly) -> XQPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        XQPoly::from_coeffs(coeffs)
    }

    fn mul_ref(&self, rhs: &XQPoly) -> XQPoly {
        if self.is_zero() || rhs.is_zero() {
            return XQPoly::zero();
        }
        let mut coeffs = vec![QPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        XQPoly::from_coeffs(coeffs)
    }
}

forward_binop!(XQPoly, Add, add, add_ref);
forward_binop!(XQPoly, Sub, sub, sub_ref);
forward_binop!(XQPoly, Mul, mul, mul_ref);

impl AddAssign<&XQPoly> for XQPoly {
    fn add_assign(&mut self, rhs: &XQPoly) {
        *self = self.add_ref(rhs);
    }
}

impl Zero for XQPoly {
    fn zero() -> Self {
        XQPoly::zero()
    }
    fn is_zero(&self) -> bool {
        XQPoly::is_zero(self)
    }
}

impl One for XQPoly {
    fn one() -> Self {
        XQPoly::one()
    }
}

impl From<QPoly> for XQPoly {
    fn from(c: QPoly) -> Self {
        XQPoly::constant(c)
    }
}

impl std::iter::Sum for XQPoly {
    fn sum<I: Iterator<Item = XQPoly>>(iter: I) -> Self {
        iter.fold(XQPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl fmt::Display for XQPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for XQPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for XQPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vec::<QPoly>::deserialize(d).map(XQPoly::from_coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    #[test]
    fn ring_operations() {
        assert_eq!(XQPoly::x() * XQPoly::x(), XQPoly::x_pow(2));
        let a = XQPoly::x() + XQPoly::monomial(QPoly::q(), 2);
        let scaled = a.scale(&QPoly::q());
        assert_eq!(
            scaled,
            XQPoly::from_coeffs(vec![QPoly::zero(), qp(&[0, 1]), qp(&[0, 0, 1])])
        );
        let b = XQPoly::one() + XQPoly::x();
        assert_eq!(&b * &XQPoly::one(), b);
        assert!((&b - &b).is_zero());
    }

    #[test]
    fn substitution_in_x() {
        // B_{2,q}(x) = x + q x^2
        let bell2 = XQPoly::x() + XQPoly::monomial(QPoly::q(), 2);
        assert_eq!(bell2.eval_x(&BigInt::one()), qp(&[1, 1]));
        assert_eq!(bell2.eval_x(&BigInt::zero()), QPoly::zero());
        assert_eq!(
            XQPoly::x_pow(2).eval_x(&BigInt::from(3)),
            QPoly::constant(9)
        );
        let c = XQPoly::constant(qp(&[5, 1])) + XQPoly::x();
        assert_eq!(c.eval_x(&BigInt::zero()), qp(&[5, 1]));
    }

    #[test]
    fn substitution_in_q() {
        let a = XQPoly::from_coeffs(vec![qp(&[1, 1]), qp(&[0, 2, 1])]);
        let at_one = a.eval_q(&BigInt::one());
        assert_eq!(at_one.coeffs(), &[QPoly::constant(2), QPoly::constant(3)]);
    }

    #[test]
    fn json_nesting() {
        let a = XQPoly::from_coeffs(vec![QPoly::zero(), qp(&[1]), qp(&[0, 1])]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"[[],["1"],["0","1"]]"#);
        assert_eq!(serde_json::from_str::<XQPoly>(&text).unwrap(), a);
    }
}
