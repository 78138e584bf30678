//! Places of Q, Legendre symbols and Hilbert symbols.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::squarefree_class;
use super::Sign;
use crate::error::{Error, Result};

/// A place of Q: the real embedding or a finite prime (2 included).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(BigUint),
}

impl Place {
    pub fn prime(p: u64) -> Result<Self> {
        if !num_prime::nt_funcs::is_prime64(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        Ok(Place::Prime(p.into()))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Legendre symbol `(a | p)` for an odd prime `p` not dividing `a`.
pub fn legendre_symbol(a: &BigInt, p: &BigInt) -> Result<Sign> {
    let two = BigInt::from(2);
    if p <= &two || p.is_even() {
        return Err(Error::NotOddPrime(p.to_string()));
    }
    let r = a.mod_floor(p);
    if r.is_zero() {
        return Err(Error::Precondition(format!("{p} divides {a}")));
    }
    let e = (p - 1u32) / 2u32;
    let x = r.modpow(&e, p);
    if x.is_one() {
        Ok(Sign::Plus)
    } else if x == p - 1u32 {
        Ok(Sign::Minus)
    } else {
        Err(Error::NotOddPrime(p.to_string()))
    }
}

/// Split `a = p^k * u` with `p` not dividing `u`.
fn split_valuation(a: &BigInt, p: &BigInt) -> (u64, BigInt) {
    let mut u = a.clone();
    let mut k = 0;
    loop {
        let (q, r) = u.div_rem(p);
        if !r.is_zero() {
            return (k, u);
        }
        u = q;
        k += 1;
    }
}

/// Hilbert symbol of two nonzero integers at a place.
pub fn hilbert_symbol_int(a: &BigInt, b: &BigInt, v: &Place) -> Result<Sign> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Zero("Hilbert symbol argument"));
    }
    match v {
        Place::Real => Ok(Sign::from_parity(a.is_negative() && b.is_negative())),
        Place::Prime(p) => {
            let p = BigInt::from(p.clone());
            let (alpha, u) = split_valuation(a, &p);
            let (beta, w) = split_valuation(b, &p);
            if p == BigInt::from(2) {
                // (-1)^(eps(u)eps(w) + alpha*omega(w) + beta*omega(u))
                let eps = |x: &BigInt| x.mod_floor(&BigInt::from(4)).to_u8().unwrap() == 3;
                let omega = |x: &BigInt| matches!(x.mod_floor(&BigInt::from(8)).to_u8().unwrap(), 3 | 5);
                let odd = (eps(&u) && eps(&w)) ^ (alpha % 2 == 1 && omega(&w)) ^ (beta % 2 == 1 && omega(&u));
                Ok(Sign::from_parity(odd))
            } else {
                let p_mod_4_is_3 = (&p % 4u32) == BigInt::from(3);
                let mut s = Sign::from_parity(alpha % 2 == 1 && beta % 2 == 1 && p_mod_4_is_3);
                if beta % 2 == 1 {
                    s = s * legendre_symbol(&u, &p)?;
                }
                if alpha % 2 == 1 {
                    s = s * legendre_symbol(&w, &p)?;
                }
                Ok(s)
            }
        }
    }
}

/// Hilbert symbol `(a, b)_v` of two nonzero rationals: +1 iff
/// `z^2 = a x^2 + b y^2` has a nontrivial solution over the completion at `v`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: &Place) -> Result<Sign> {
    let a = squarefree_class(a)?;
    let b = squarefree_class(b)?;
    hilbert_symbol_int(&a, &b, v)
}

/// The real place, 2, and every prime dividing a numerator or denominator.
///
/// Hilbert symbols of these coefficients at any other place are trivial.
pub fn relevant_places<'a>(coeffs: impl IntoIterator<Item = &'a BigRational>) -> Vec<Place> {
    let mut primes: BTreeSet<BigUint> = BTreeSet::new();
    primes.insert(BigUint::from(2u32));
    for c in coeffs {
        for part in [c.numer().magnitude(), c.denom().magnitude()] {
            if !part.is_zero() && !part.is_one() {
                primes.extend(num_prime::nt_funcs::factorize(part.clone()).into_keys());
            }
        }
    }
    std::iter::once(Place::Real).chain(primes.into_iter().map(Place::Prime)).collect()
}
