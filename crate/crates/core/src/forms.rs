//! Nondegenerate diagonal quadratic forms and their classical invariants.
//!
//! Two local invariants are computed over Q:
//!
//! * the Hasse invariant `s_v(q) = prod_{i<j} (a_i, a_j)_v`, an isometry
//!   invariant;
//! * the Witt (Clifford) invariant `c_v(q)`, obtained from `s_v(q)` by a
//!   correction depending on `dim q mod 8` and the determinant. It depends only
//!   on the Witt class for even-dimensional forms and is the invariant that
//!   detects `I^3` (together with dimension and signed discriminant).
//!
//! The two agree when `dim q = 0, 1, 2 mod 8`; they differ by `(-1,-1)_v` on
//! forms of dimension 4 and 6 mod 8 with trivial signed discriminant.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::field::{hilbert_symbol_int, relevant_places, BaseField, FieldElem, Place, Sign};

/// `<a_1, ..., a_n>` over a base field; every coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalForm<K> {
    field: BaseField,
    coeffs: Vec<K>,
}

impl<K: FieldElem> DiagonalForm<K> {
    pub fn new(field: BaseField, coeffs: Vec<K>) -> Result<Self> {
        for c in &coeffs {
            if c.base_field() != field {
                return Err(Error::FieldMismatch(field.to_string(), c.base_field().to_string()));
            }
            if c.is_zero_elem() {
                return Err(Error::Zero("form coefficient"));
            }
        }
        Ok(DiagonalForm { field, coeffs })
    }

    pub fn from_ints(field: BaseField, coeffs: &[i64]) -> Result<Self> {
        let cs = coeffs.iter().map(|&c| K::from_int(&field, c)).collect::<Result<Vec<_>>>()?;
        Self::new(field, cs)
    }

    /// The zero Witt class.
    pub fn empty(field: BaseField) -> Self {
        DiagonalForm { field, coeffs: Vec::new() }
    }

    /// `h^{⊕k}` with `h = <1, -1>`.
    pub fn hyperbolic(field: BaseField, k: usize) -> Self {
        let one = K::from_int(&field, 1).expect("field matches");
        let coeffs = (0..k).flat_map(|_| [one.clone(), -one.clone()]).collect();
        DiagonalForm { field, coeffs }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(other.coeffs.iter().cloned());
        Ok(DiagonalForm { field: self.field, coeffs })
    }

    pub fn scale(&self, c: &K) -> Result<Self> {
        if c.base_field() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), c.base_field().to_string()));
        }
        if c.is_zero_elem() {
            return Err(Error::Zero("scaling factor"));
        }
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        Ok(DiagonalForm { field: self.field, coeffs })
    }

    /// `-q`, the additive inverse in the Witt ring.
    pub fn negate(&self) -> Self {
        DiagonalForm { field: self.field, coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }

    /// Coefficients replaced by their canonical square classes (an isometric form).
    pub fn reduced(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.square_class().expect("nonzero")).collect();
        DiagonalForm { field: self.field, coeffs }
    }

    /// Signed discriminant `(-1)^{n(n-1)/2} prod a_i`, as a square class.
    pub fn signed_discriminant(&self) -> K {
        let n = self.dim();
        let start = K::from_int(&self.field, if (n * n.saturating_sub(1) / 2) % 2 == 1 { -1 } else { 1 })
            .expect("field matches");
        self.coeffs.iter().fold(start, |acc, a| K::mul_classes(&acc, &a.square_class().expect("nonzero")))
    }

    /// Determinant `prod a_i` as a square class.
    pub fn determinant(&self) -> K {
        let one = K::from_int(&self.field, 1).expect("field matches");
        self.coeffs.iter().fold(one, |acc, a| K::mul_classes(&acc, &a.square_class().expect("nonzero")))
    }

    /// Square-class representatives of the coefficients (squarefree integers); Q only.
    fn rationals(&self) -> Result<Vec<BigRational>> {
        self.coeffs
            .iter()
            .map(|c| {
                c.as_rational()
                    .map(|r| r.square_class().expect("nonzero"))
                    .ok_or(Error::WrongField { expected: "Q", got: self.field.to_string() })
            })
            .collect()
    }

    /// Hasse invariant `prod_{i<j} (a_i, a_j)_v`; requires Q.
    pub fn hasse_witt(&self, v: &Place) -> Result<Sign> {
        hasse_of(&classes(&self.rationals()?), v)
    }

    /// Witt (Clifford) invariant at `v`; requires Q.
    pub fn clifford_invariant(&self, v: &Place) -> Result<Sign> {
        let c = classes(&self.rationals()?);
        clifford_of(&c, hasse_of(&c, v)?, v)
    }

    /// Count of positive minus negative coefficients; `None` over F_p.
    pub fn signature(&self) -> Option<i64> {
        let a = self.rationals().ok()?;
        Some(a.iter().map(|x| if x.is_positive() { 1 } else { -1 }).sum())
    }

    /// Places where local symbols of this form can be nontrivial (Q only).
    pub fn places(&self) -> Result<Vec<Place>> {
        Ok(relevant_places(self.rationals()?.iter()))
    }

    pub fn invariants(&self) -> WittInvariants<K> {
        let (hasse_symbols, clifford_symbols) = match self.rationals() {
            Ok(a) => {
                let mut hs = BTreeMap::new();
                let mut cs = BTreeMap::new();
                let sq = classes(&a);
                for v in relevant_places(a.iter()) {
                    let s = hasse_of(&sq, &v).expect("nonzero coefficients");
                    let c = clifford_of(&sq, s, &v).expect("nonzero coefficients");
                    if s.is_minus() {
                        hs.insert(v.clone(), s);
                    }
                    if c.is_minus() {
                        cs.insert(v, c);
                    }
                }
                (hs, cs)
            }
            Err(_) => Default::default(),
        };
        WittInvariants {
            dimension: self.dim(),
            signed_discriminant: self.signed_discriminant(),
            hasse_symbols,
            clifford_symbols,
            signature: self.signature(),
        }
    }
}

/// Product of two squarefree integers as a squarefree integer.
fn class_mul(s: &BigInt, t: &BigInt) -> BigInt {
    let g = s.gcd(t);
    (s / &g) * (t / &g)
}

/// The square classes returned by `rationals` as integers.
fn classes(a: &[BigRational]) -> Vec<BigInt> {
    a.iter().map(BigRational::to_integer).collect()
}

/// `prod_{i<j} (a_i, a_j)_v`, evaluated as `prod_j (a_1...a_{j-1}, a_j)_v`.
fn hasse_of(c: &[BigInt], v: &Place) -> Result<Sign> {
    let mut s = Sign::Plus;
    let mut prefix = BigInt::one();
    for x in c {
        s = s * hilbert_symbol_int(&prefix, x, v)?;
        prefix = class_mul(&prefix, x);
    }
    Ok(s)
}

fn clifford_of(c: &[BigInt], hasse: Sign, v: &Place) -> Result<Sign> {
    let det = c.iter().fold(BigInt::one(), |acc, x| class_mul(&acc, x));
    let minus_one = -BigInt::one();
    let correction = match c.len() % 8 {
        1 | 2 => Sign::Plus,
        3 | 4 => hilbert_symbol_int(&minus_one, &-det, v)?,
        5 | 6 => hilbert_symbol_int(&minus_one, &minus_one, v)?,
        _ => hilbert_symbol_int(&minus_one, &det, v)?,
    };
    Ok(hasse * correction)
}

/// Symmetric Gaussian elimination: a diagonal form congruent to `gram`.
#[allow(clippy::needless_range_loop)]
pub fn diagonalize<K: FieldElem>(field: BaseField, gram: &[Vec<K>]) -> Result<DiagonalForm<K>> {
    let n = gram.len();
    let mut m: Vec<Vec<K>> = gram.to_vec();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare);
        }
        for (j, x) in row.iter().enumerate() {
            if x.base_field() != field {
                return Err(Error::FieldMismatch(field.to_string(), x.base_field().to_string()));
            }
            if *x != m[j][i] {
                return Err(Error::NotSymmetric(i, j));
            }
        }
    }
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if m[k][k].is_zero_elem() {
            if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero_elem()) {
                m.swap(k, j);
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero_elem()) {
                // e_k <- e_k + e_j; new pivot is 2 m[k][j] != 0 in char != 2
                for c in 0..n {
                    let add = m[j][c].clone();
                    m[k][c] = m[k][c].clone() + add;
                }
                for r in 0..n {
                    let add = m[r][j].clone();
                    m[r][k] = m[r][k].clone() + add;
                }
            } else {
                return Err(Error::Singular);
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            if m[i][k].is_zero_elem() {
                continue;
            }
            let f = m[i][k].clone() / pivot.clone();
            for c in k..n {
                let sub = f.clone() * m[k][c].clone();
                m[i][c] = m[i][c].clone() - sub;
            }
            for r in k..n {
                let sub = f.clone() * m[r][k].clone();
                m[r][i] = m[r][i].clone() - sub;
            }
        }
        diag.push(pivot);
    }
    DiagonalForm::new(field, diag)
}

/// Classifying data of a form: over Q `(dim, d±, local symbols, signature)`,
/// over F_p `(dim, d±)`. Local maps list only the places where the symbol is -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittInvariants<K> {
    pub dimension: usize,
    pub signed_discriminant: K,
    pub hasse_symbols: BTreeMap<Place, Sign>,
    pub clifford_symbols: BTreeMap<Place, Sign>,
    pub signature: Option<i64>,
}

impl<K> WittInvariants<K> {
    pub fn hasse_at(&self, v: &Place) -> Sign {
        self.hasse_symbols.get(v).copied().unwrap_or(Sign::Plus)
    }

    pub fn clifford_at(&self, v: &Place) -> Sign {
        self.clifford_symbols.get(v).copied().unwrap_or(Sign::Plus)
    }
}

impl<K: fmt::Display> fmt::Display for DiagonalForm<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{hilbert_symbol, Fp, Rational};

    const Q: BaseField = BaseField::Rationals;

    fn qf(cs: &[i64]) -> DiagonalForm<Rational> {
        DiagonalForm::from_ints(Q, cs).unwrap()
    }

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn direct_sum_and_scale() {
        assert_eq!(qf(&[1]).direct_sum(&qf(&[-1])).unwrap(), qf(&[1, -1]));
        let h = DiagonalForm::<Rational>::hyperbolic(Q, 1);
        assert_eq!(h.direct_sum(&h).unwrap(), qf(&[1, -1, 1, -1]));
        assert_eq!(h.direct_sum(&DiagonalForm::empty(Q)).unwrap(), h);
        assert_eq!(qf(&[1, -1]).scale(&q(5)).unwrap(), qf(&[5, -5]));
        assert_eq!(qf(&[2]).scale(&Rational::new(1.into(), 2.into())).unwrap(), qf(&[1]));
        assert!(qf(&[2]).scale(&q(0)).is_err());
        let f5 = DiagonalForm::<Fp>::from_ints(BaseField::PrimeField(5), &[1]).unwrap();
        let f7 = DiagonalForm::<Fp>::from_ints(BaseField::PrimeField(7), &[1]).unwrap();
        assert!(f5.direct_sum(&f7).is_err());
        assert!(DiagonalForm::<Rational>::from_ints(Q, &[1, 0]).is_err());
    }

    #[test]
    fn signed_discriminants() {
        assert_eq!(qf(&[1, -1]).signed_discriminant(), q(1));
        assert_eq!(qf(&[1, 1]).signed_discriminant(), q(-1));
        assert_eq!(qf(&[1, 2, 3, 6]).signed_discriminant(), q(1));
        assert_eq!(DiagonalForm::<Rational>::empty(Q).signed_discriminant(), q(1));
    }

    #[test]
    fn hasse_examples() {
        for v in [Place::Real, Place::prime(2).unwrap(), Place::prime(3).unwrap()] {
            assert_eq!(qf(&[1; 5]).hasse_witt(&v).unwrap(), Sign::Plus);
            assert_eq!(qf(&[1]).hasse_witt(&v).unwrap(), Sign::Plus);
        }
        assert_eq!(qf(&[-1, -1]).hasse_witt(&Place::Real).unwrap(), Sign::Minus);
        let f5 = DiagonalForm::<Fp>::from_ints(BaseField::PrimeField(5), &[1, 2]).unwrap();
        assert!(f5.hasse_witt(&Place::Real).is_err());
    }

    #[test]
    fn clifford_invariant_of_hyperbolics_is_trivial() {
        for k in 0..6 {
            let h = DiagonalForm::<Rational>::hyperbolic(Q, k);
            for v in h.places().unwrap() {
                assert_eq!(h.clifford_invariant(&v).unwrap(), Sign::Plus, "h^{k} at {v}");
            }
        }
        // while the Hasse invariant of h^2 is (-1,-1)
        let h2 = DiagonalForm::<Rational>::hyperbolic(Q, 2);
        assert_eq!(h2.hasse_witt(&Place::Real).unwrap(), Sign::Minus);
    }

    #[test]
    fn clifford_invariant_of_two_fold_pfister_is_quaternion_algebra() {
        // <1,a,b,ab> carries the class of (-a,-b)
        for (a, b) in [(1, 1), (2, 3), (-1, 5), (3, -7), (6, 10)] {
            let f = qf(&[1, a, b, a * b]);
            for v in f.places().unwrap() {
                let expected = hilbert_symbol(&q(-a), &q(-b), &v).unwrap();
                assert_eq!(f.clifford_invariant(&v).unwrap(), expected);
            }
        }
    }

    #[test]
    fn invariants_examples() {
        let h = qf(&[1, -1]).invariants();
        assert_eq!((h.dimension, h.signed_discriminant.clone(), h.signature), (2, q(1), Some(0)));
        assert!(h.hasse_symbols.is_empty());
        let e = qf(&[1; 8]).invariants();
        assert_eq!((e.dimension, e.signed_discriminant.clone(), e.signature), (8, q(1), Some(8)));
        assert!(e.hasse_symbols.is_empty() && e.clifford_symbols.is_empty());
        let t = qf(&[1, 1]).invariants();
        assert_eq!((t.dimension, t.signed_discriminant.clone(), t.signature), (2, q(-1), Some(2)));
        assert!(t.hasse_symbols.is_empty());
        let fp = DiagonalForm::<Fp>::from_ints(BaseField::PrimeField(7), &[1, 3]).unwrap().invariants();
        assert_eq!(fp.signature, None);
        assert_eq!(fp.signed_discriminant, Fp::new(1, 7));
    }

    #[test]
    fn diagonalize_examples() {
        assert_eq!(diagonalize(Q, &mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(), qf(&[1, 1, 1]));
        assert_eq!(diagonalize(Q, &mat(&[&[2, 0], &[0, 3]])).unwrap(), qf(&[2, 3]));
        let d = diagonalize(Q, &mat(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(d.dim(), 2);
        assert_eq!(d.signed_discriminant(), q(1));
        assert_eq!(d.invariants(), qf(&[1, -1]).invariants());
        let g = mat(&[&[0, 1, 2], &[1, 0, 3], &[2, 3, 0]]);
        let d = diagonalize(Q, &g).unwrap();
        assert_eq!(d.dim(), 3);
        assert!(diagonalize(Q, &mat(&[&[1, 2], &[3, 4]])).is_err());
        assert_eq!(diagonalize(Q, &mat(&[&[1, 1], &[1, 1]])), Err(Error::Singular));
        assert_eq!(diagonalize(Q, &mat(&[&[1, 1]])), Err(Error::NotSquare));
    }

    #[test]
    fn diagonalize_over_fp() {
        let f = BaseField::PrimeField(5);
        let g: Vec<Vec<Fp>> = [[0, 1], [1, 0]].iter().map(|r| r.iter().map(|&x| Fp::new(x, 5)).collect()).collect();
        let d = diagonalize(f, &g).unwrap();
        assert_eq!(d.signed_discriminant(), Fp::new(1, 5));
    }
}
