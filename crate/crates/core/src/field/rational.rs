use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use super::{BaseField, FieldElem};
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Squarefree part of a positive integer.
pub(crate) fn squarefree_part(n: &BigUint) -> BigUint {
    if n.is_one() {
        return BigUint::one();
    }
    num_prime::nt_funcs::factorize(n.clone())
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(BigUint::one(), |acc, (p, _)| acc * p)
}

/// Signed squarefree integer in the square class of `a`.
pub fn squarefree_class(a: &BigRational) -> Result<BigInt> {
    if a.is_zero() {
        return Err(Error::Zero("square class of zero"));
    }
    let n = a.numer().magnitude() * a.denom().magnitude();
    let sf = squarefree_part(&n);
    let sign = if a.is_negative() { BigSign::Minus } else { BigSign::Plus };
    Ok(BigInt::from_biguint(sign, sf))
}

fn is_integer_squarefree_class(a: &BigRational) -> bool {
    a.is_integer()
}

impl FieldElem for BigRational {
    fn base_field(&self) -> BaseField {
        BaseField::Rationals
    }

    fn from_int(field: &BaseField, v: i64) -> Result<Self> {
        match field {
            BaseField::Rationals => Ok(BigRational::from_integer(v.into())),
            other => Err(Error::FieldMismatch("Q".into(), other.to_string())),
        }
    }

    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }

    fn square_class(&self) -> Result<Self> {
        squarefree_class(self).map(BigRational::from_integer)
    }

    fn mul_classes(a: &Self, b: &Self) -> Self {
        // s*t / gcd(s,t)^2 is squarefree when s and t are.
        if is_integer_squarefree_class(a) && is_integer_squarefree_class(b) {
            let (s, t) = (a.to_integer(), b.to_integer());
            let g = s.gcd(&t);
            return BigRational::from_integer((s / &g) * (t / &g));
        }
        (a * b).square_class().expect("nonzero classes")
    }

    fn parse(field: &BaseField, s: &str) -> Result<Self> {
        if !field.is_rationals() {
            return Err(Error::FieldMismatch("Q".into(), field.to_string()));
        }
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num = BigInt::from_str(num).map_err(|e| Error::parse("coefficient", format!("{t:?}: {e}")))?;
        let den = BigInt::from_str(den).map_err(|e| Error::parse("coefficient", format!("{t:?}: {e}")))?;
        if den.is_zero() {
            return Err(Error::parse("coefficient", format!("{t:?}: zero denominator")));
        }
        Ok(BigRational::new(num, den))
    }

    fn as_rational(&self) -> Option<&BigRational> {
        Some(self)
    }
}
