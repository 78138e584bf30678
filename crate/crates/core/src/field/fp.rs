use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Inv, ToPrimitive};
use std::str::FromStr;

use super::{BaseField, FieldElem};
use crate::error::{Error, Result};

/// A residue modulo an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    residue: u64,
    modulus: u64,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Least positive quadratic nonresidue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| pow_mod(a, (p - 1) / 2, p) == p - 1).expect("every odd prime has a nonresidue")
}

impl Fp {
    /// `v mod p`. The caller guarantees `p` is an odd prime (see [`BaseField::prime`]).
    pub fn new(v: i64, p: u64) -> Self {
        let r = (v as i128).rem_euclid(p as i128) as u64;
        Fp { residue: r, modulus: p }
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_square(&self) -> bool {
        self.residue != 0 && pow_mod(self.residue, (self.modulus - 1) / 2, self.modulus) == 1
    }

    /// All elements of `F_p`, zero included.
    pub fn all(p: u64) -> impl Iterator<Item = Fp> {
        (0..p).map(move |r| Fp { residue: r, modulus: p })
    }

    fn check(&self, other: &Fp) {
        assert_eq!(self.modulus, other.modulus, "mixed residues from different prime fields");
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp { residue: ((self.residue as u128 + rhs.residue as u128) % self.modulus as u128) as u64, ..self }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { residue: (self.modulus - self.residue) % self.modulus, ..self }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp { residue: mul_mod(self.residue, rhs.residue, self.modulus), ..self }
    }
}

impl Inv for Fp {
    type Output = Fp;
    fn inv(self) -> Fp {
        assert!(self.residue != 0, "inverse of zero in F_{}", self.modulus);
        Fp { residue: pow_mod(self.residue, self.modulus - 2, self.modulus), ..self }
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inv()
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl FieldElem for Fp {
    fn base_field(&self) -> BaseField {
        BaseField::PrimeField(self.modulus)
    }

    fn from_int(field: &BaseField, v: i64) -> Result<Self> {
        match field {
            BaseField::PrimeField(p) => Ok(Fp::new(v, *p)),
            other => Err(Error::FieldMismatch("F_p".into(), other.to_string())),
        }
    }

    fn is_zero_elem(&self) -> bool {
        self.residue == 0
    }

    fn square_class(&self) -> Result<Self> {
        if self.residue == 0 {
            return Err(Error::Zero("square class of zero"));
        }
        let r = if self.is_square() { 1 } else { least_nonresidue(self.modulus) };
        Ok(Fp { residue: r, ..*self })
    }

    fn parse(field: &BaseField, s: &str) -> Result<Self> {
        let BaseField::PrimeField(p) = *field else {
            return Err(Error::FieldMismatch("F_p".into(), field.to_string()));
        };
        let t = s.trim();
        let reduce = |x: &str| -> Result<Fp> {
            let v = BigInt::from_str(x.trim()).map_err(|e| Error::parse("coefficient", format!("{t:?}: {e}")))?;
            let r = v.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p");
            Ok(Fp { residue: r, modulus: p })
        };
        match t.split_once('/') {
            Some((n, d)) => {
                let d = reduce(d)?;
                if d.residue == 0 {
                    return Err(Error::parse("coefficient", format!("{t:?}: denominator divisible by {p}")));
                }
                Ok(reduce(n)? / d)
            }
            None => reduce(t),
        }
    }

    fn as_rational(&self) -> Option<&BigRational> {
        None
    }
}
