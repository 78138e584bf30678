//! Exact base fields of characteristic not 2: the rationals and prime fields.
//!
//! Forms and Witt-ring procedures are generic over [`FieldElem`], which is
//! implemented by [`Rational`] (an arbitrary-precision `BigRational`) and by
//! [`Fp`] (a residue modulo an odd prime carried at runtime).

mod fp;
mod local;
mod rational;

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Inv;

use crate::error::{Error, Result};

pub use fp::{least_nonresidue, Fp};
pub use local::{hilbert_symbol, hilbert_symbol_int, legendre_symbol, relevant_places, Place};
pub use rational::{squarefree_class, Rational};

/// The base field a form lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseField {
    Rationals,
    PrimeField(u64),
}

impl BaseField {
    /// `F_p`, checking that `p` is an odd prime.
    pub fn prime(p: u64) -> Result<Self> {
        if p.is_multiple_of(2) || !num_prime::nt_funcs::is_prime64(p) {
            return Err(Error::NotOddPrime(p.to_string()));
        }
        Ok(BaseField::PrimeField(p))
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, BaseField::Rationals)
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

/// A sign in `{+1, -1}`; used for Hilbert symbols, Pfister coefficients and
/// Clifford group elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != rhs.is_minus())
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, Mul::mul)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// An exact element of a base field of characteristic not 2.
pub trait FieldElem:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Inv<Output = Self>
{
    fn base_field(&self) -> BaseField;

    /// The image of an integer in `field`.
    fn from_int(field: &BaseField, v: i64) -> Result<Self>;

    fn is_zero_elem(&self) -> bool;

    /// Canonical representative of `self * (K*)^2`.
    fn square_class(&self) -> Result<Self>;

    /// Canonical class of the product of two canonical classes.
    fn mul_classes(a: &Self, b: &Self) -> Self {
        (a.clone() * b.clone()).square_class().expect("product of nonzero classes is nonzero")
    }

    /// Parse a coefficient string ("-3/5", "4") into `field`.
    fn parse(field: &BaseField, s: &str) -> Result<Self>;

    /// The underlying rational when the base field is Q.
    fn as_rational(&self) -> Option<&BigRational>;
}
