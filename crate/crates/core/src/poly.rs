//! Integer polynomials in `q`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A polynomial in `q` with arbitrary precision integer coefficients, stored
/// in ascending order without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<BigInt>,
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `q - 1`.
    pub fn q_minus_one() -> Self {
        Self::from_coeffs(&[-1, 1])
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(&[c])
    }

    pub fn monomial(c: i64, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = BigInt::from(c);
        Self::from_big(coeffs)
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_big(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_big(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    /// `q^a (q-1)^b`.
    pub fn cell(a: usize, b: usize) -> Self {
        let mut p = Self::monomial(1, a);
        for _ in 0..b {
            p = &p * &Self::q_minus_one();
        }
        p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyQ { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_big(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_i64(&self, q: i64) -> BigInt {
        self.eval(&BigInt::from(q))
    }

    /// Exact division. Fails unless the remainder is zero.
    ///
    /// The divisor's constant term must be `±1` (true of every Poincaré
    /// polynomial), so long division from the bottom stays integral.
    pub fn div_exact(&self, divisor: &PolyQ) -> Result<PolyQ> {
        let c0 = divisor
            .coeffs
            .first()
            .ok_or_else(|| Error::Consistency("division by zero polynomial".into()))?;
        if !c0.abs().is_one() {
            return Err(Error::Consistency(format!(
                "divisor {divisor} does not have unit constant term"
            )));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let dd = divisor.coeffs.len() - 1;
        let dn = self.coeffs.len() - 1;
        if dn < dd {
            return Err(Error::Consistency(format!("{self} is not divisible by {divisor}")));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for k in 0..=dn - dd {
            let c = &rem[k] * c0;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::Consistency(format!("{self} is not divisible by {divisor}")));
        }
        Ok(Self::from_big(quot))
    }

    /// The same polynomial written in `z = q - 1`: coefficients `c_k` with
    /// `p(q) = Σ c_k (q-1)^k`.
    pub fn in_q_minus_one(&self) -> PolyQ {
        // Taylor shift by +1: p(z + 1).
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let next = c[j + 1].clone();
                c[j] += next;
            }
        }
        Self::from_big(c)
    }

    pub fn has_nonneg_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Membership in `Z_{≥0}[q-1]`.
    pub fn is_nonneg_in_q_minus_one(&self) -> bool {
        self.in_q_minus_one().has_nonneg_coeffs()
    }

    pub fn to_json(&self) -> Value {
        json!({ "coeffs": self.coeffs.iter().map(bigint_to_json).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("polynomial JSON needs a \"coeffs\" array".into()))?;
        let coeffs = arr.iter().map(bigint_from_json).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_big(coeffs))
    }
}

pub(crate) fn bigint_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(x) => json!(x),
        None => json!(c.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("non-integer coefficient {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        _ => Err(Error::Parse(format!("bad coefficient {v}"))),
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match k {
                0 => write!(f, "{abs}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{abs}q")?,
                _ if unit => write!(f, "q^{k}")?,
                _ => write!(f, "{abs}q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add<&PolyQ> for &PolyQ {
    type Output = PolyQ;

    fn add(self, rhs: &PolyQ) -> PolyQ {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&PolyQ> for PolyQ {
    fn add_assign(&mut self, rhs: &PolyQ) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Sub<&PolyQ> for &PolyQ {
    type Output = PolyQ;

    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&PolyQ> for PolyQ {
    fn sub_assign(&mut self, rhs: &PolyQ) {
        *self += &(-rhs);
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;

    fn neg(self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&PolyQ> for &PolyQ {
    type Output = PolyQ;

    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolyQ::from_big(coeffs)
    }
}

impl Add for PolyQ {
    type Output = PolyQ;

    fn add(mut self, rhs: PolyQ) -> PolyQ {
        self += &rhs;
        self
    }
}

impl Mul for PolyQ {
    type Output = PolyQ;

    fn mul(self, rhs: PolyQ) -> PolyQ {
        &self * &rhs
    }
}

impl Zero for PolyQ {
    fn zero() -> Self {
        PolyQ::zero()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for PolyQ {
    fn one() -> Self {
        PolyQ::one()
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn p(c: &[i64]) -> PolyQ {
        PolyQ::from_coeffs(c)
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, -1]) + p(&[-1, 1]), PolyQ::zero());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, -1, 0, 0, 0, 1]).to_string(), "q^5 - q");
        assert_eq!(p(&[2, 1]).to_string(), "q + 2");
        assert_eq!(PolyQ::zero().to_string(), "0");
        assert_eq!(p(&[0, 3]).to_string(), "3q");
    }

    #[test]
    fn exact_division() {
        let pi = p(&[1, 1]) * p(&[1, 1, 1, 1]);
        let x = &pi * &p(&[0, -1, 0, 0, 0, 1]);
        assert_eq!(x.div_exact(&pi).unwrap(), p(&[0, -1, 0, 0, 0, 1]));
        assert!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])).is_err());
        assert!(p(&[1]).div_exact(&p(&[2, 1])).is_err());
    }

    #[test]
    fn shift_to_q_minus_one() {
        // q^5 - q = z^5 + 5z^4 + 10z^3 + 10z^2 + 4z
        assert_eq!(p(&[0, -1, 0, 0, 0, 1]).in_q_minus_one(), p(&[0, 4, 10, 10, 5, 1]));
        assert_eq!(p(&[-1, 1]).in_q_minus_one(), p(&[0, 1]));
        assert!(!p(&[1, -1]).is_nonneg_in_q_minus_one());
        assert_eq!(PolyQ::cell(2, 1), p(&[0, 0, -1, 1]));
    }

    #[test]
    fn json_round_trip_with_big_coefficients() {
        let big = PolyQ::from_big(vec![BigInt::from(7), BigInt::from(1u8) << 100]);
        assert_eq!(PolyQ::from_json(&big.to_json()).unwrap(), big);
        assert_eq!(p(&[0, 1]).to_json(), json!({"coeffs": [0, 1]}));
    }

    fn poly() -> impl Strategy<Value = PolyQ> {
        proptest::collection::vec(-20i64..20, 0..6).prop_map(|c| PolyQ::from_coeffs(&c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in poly(), b in poly(), q in -5i64..6) {
            prop_assert_eq!((&a * &b).eval_i64(q), a.eval_i64(q) * b.eval_i64(q));
            prop_assert_eq!(a.in_q_minus_one().eval_i64(q - 1), a.eval_i64(q));
        }

        #[test]
        fn division_inverts_multiplication(a in poly(), tail in proptest::collection::vec(-3i64..4, 0..4)) {
            let mut d = vec![1];
            d.extend(tail);
            let d = PolyQ::from_coeffs(&d);
            prop_assert_eq!((&a * &d).div_exact(&d).unwrap(), a);
        }
    }
}
