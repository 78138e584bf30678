//! Decision procedures in the Witt ring.

use crate::error::{Error, Result};
use crate::field::{BaseField, FieldElem, Fp};
use crate::forms::DiagonalForm;

/// A power `I^a` of the fundamental ideal, `a` in `0..=3` (`I^0 = W`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealLevel(u8);

impl IdealLevel {
    pub const MAX: u8 = 3;

    pub fn new(a: u8) -> Result<Self> {
        if a > Self::MAX {
            return Err(Error::UnsupportedLevel(a));
        }
        Ok(IdealLevel(a))
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

fn one<K: FieldElem>(field: &BaseField) -> K {
    K::from_int(field, 1).expect("field matches")
}

/// Over Q: even dimension, signature 0, trivial signed discriminant and trivial
/// Witt invariant at every place. Over F_p: even dimension and trivial signed
/// discriminant.
pub fn is_hyperbolic<K: FieldElem>(q: &DiagonalForm<K>) -> bool {
    if q.dim() % 2 == 1 || q.signed_discriminant() != one(&q.field()) {
        return false;
    }
    match q.field() {
        BaseField::Rationals => {
            let inv = q.invariants();
            inv.signature == Some(0) && inv.clifford_symbols.is_empty()
        }
        BaseField::PrimeField(_) => true,
    }
}

/// `q1 ~ q2` iff `q1 ⊕ -q2` is hyperbolic.
pub fn witt_equivalent<K: FieldElem>(q1: &DiagonalForm<K>, q2: &DiagonalForm<K>) -> Result<bool> {
    Ok(is_hyperbolic(&q1.direct_sum(&q2.negate())?))
}

/// Membership of the Witt class of `q` in `I^a`.
///
/// `I^1`: even dimension. `I^2`: additionally trivial signed discriminant.
/// `I^3`: additionally trivial Witt invariant at every place of Q. Over F_p
/// there is no local data and `I^3` membership coincides with `I^2`.
pub fn ideal_membership<K: FieldElem>(q: &DiagonalForm<K>, level: IdealLevel) -> bool {
    let a = level.get();
    if a == 0 {
        return true;
    }
    if q.dim() % 2 == 1 {
        return false;
    }
    if a == 1 {
        return true;
    }
    if q.signed_discriminant() != one(&q.field()) {
        return false;
    }
    if a == 2 || !q.field().is_rationals() {
        return true;
    }
    q.invariants().clifford_symbols.is_empty()
}

/// Exhaustive search for an isotropic vector of `<coeffs>` in projective space.
/// Coordinates are normalised so the first nonzero entry is 1.
fn find_isotropic(coeffs: &[Fp], p: u64) -> Option<Vec<Fp>> {
    let d = coeffs.len();
    let zero = Fp::new(0, p);
    for lead in 0..d {
        let free = d - lead - 1;
        let total = (p as u128).pow(free as u32);
        for code in 0..total {
            let mut v = vec![zero; d];
            v[lead] = Fp::new(1, p);
            let mut c = code;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = Fp::new((c % p as u128) as i64, p);
                c /= p as u128;
            }
            let val = v.iter().zip(coeffs).fold(zero, |acc, (x, a)| acc + *a * *x * *x);
            if val.is_zero_elem() {
                return Some(v);
            }
        }
    }
    None
}

/// Split a hyperbolic plane off the isotropic 2- or 3-dimensional form
/// `<coeffs>`, returning the diagonal of the orthogonal complement.
fn split_plane(coeffs: &[Fp], v: &[Fp], p: u64) -> Vec<Fp> {
    if coeffs.len() == 2 {
        return Vec::new();
    }
    let zero = Fp::new(0, p);
    // B(x, y) = sum a_i x_i y_i; find a basis vector e with B(v, e) != 0.
    let av: Vec<Fp> = coeffs.iter().zip(v).map(|(a, x)| *a * *x).collect();
    let k = av.iter().position(|x| !x.is_zero_elem()).expect("v is nonzero and q is nondegenerate");
    let mut e = vec![zero; 3];
    e[k] = Fp::new(1, p);
    let ae: Vec<Fp> = coeffs.iter().zip(&e).map(|(a, x)| *a * *x).collect();
    // The complement of span(v, e) is spanned by the cross product of the
    // covectors B(v, .) and B(e, .).
    let w = [av[1] * ae[2] - av[2] * ae[1], av[2] * ae[0] - av[0] * ae[2], av[0] * ae[1] - av[1] * ae[0]];
    let c = w.iter().zip(coeffs).fold(zero, |acc, (x, a)| acc + *a * *x * *x);
    vec![c]
}

/// A form of dimension at most 2 Witt-equivalent to `q` over F_p, obtained by
/// repeatedly splitting off hyperbolic planes found by exhaustive search.
pub fn anisotropic_kernel_fp(q: &DiagonalForm<Fp>) -> Result<DiagonalForm<Fp>> {
    let BaseField::PrimeField(p) = q.field() else {
        return Err(Error::WrongField { expected: "F_p", got: q.field().to_string() });
    };
    let mut coeffs: Vec<Fp> = q.coeffs().to_vec();
    // Invariant: `coeffs` is Witt-equivalent to q.
    loop {
        if coeffs.len() < 2 {
            break;
        }
        let window = coeffs.len().min(3);
        let head = &coeffs[..window];
        match find_isotropic(head, p) {
            Some(v) => {
                let rest = split_plane(head, &v, p);
                coeffs.splice(..window, rest);
            }
            None => {
                debug_assert_eq!(window, 2, "ternary forms over finite fields are isotropic");
                break;
            }
        }
    }
    DiagonalForm::new(q.field(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    const Q: BaseField = BaseField::Rationals;

    fn qf(cs: &[i64]) -> DiagonalForm<Rational> {
        DiagonalForm::from_ints(Q, cs).unwrap()
    }

    fn ff(p: u64, cs: &[i64]) -> DiagonalForm<Fp> {
        DiagonalForm::from_ints(BaseField::PrimeField(p), cs).unwrap()
    }

    fn lvl(a: u8) -> IdealLevel {
        IdealLevel::new(a).unwrap()
    }

    #[test]
    fn hyperbolic_examples() {
        for k in 0..7 {
            assert!(is_hyperbolic(&DiagonalForm::<Rational>::hyperbolic(Q, k)));
            assert!(is_hyperbolic(&DiagonalForm::<Fp>::hyperbolic(BaseField::PrimeField(7), k)));
        }
        assert!(!is_hyperbolic(&qf(&[1, 1])));
        assert!(is_hyperbolic(&ff(5, &[1, 2, -1, -2])));
        assert!(is_hyperbolic(&qf(&[3, -3, 5, -20])));
        assert!(!is_hyperbolic(&qf(&[1, 1, -1, -1, 2, 2, -1, -1]).direct_sum(&qf(&[1, 1])).unwrap()));
        // <1,1,1,1> ⊕ <-1,-1,-1,-1> is hyperbolic; <1,1,-1,-1> twisted by 2 is too
        assert!(is_hyperbolic(&qf(&[1, 1, 1, 1, -1, -1, -1, -1])));
    }

    #[test]
    fn equivalence_examples() {
        let q = qf(&[2, -5, 7]);
        assert!(witt_equivalent(&q, &q).unwrap());
        assert!(witt_equivalent(&qf(&[1, -1]), &DiagonalForm::empty(Q)).unwrap());
        assert!(witt_equivalent(&qf(&[1, 3]), &qf(&[3, 1])).unwrap());
        // <1,1> ≅ <2,2> over Q
        assert!(witt_equivalent(&qf(&[1, 1]), &qf(&[2, 2])).unwrap());
        assert!(!witt_equivalent(&qf(&[1, 1]), &qf(&[3, 3])).unwrap());
        assert!(witt_equivalent(&ff(5, &[1]), &ff(7, &[1])).is_err());
    }

    #[test]
    fn kernels_over_fp() {
        assert_eq!(anisotropic_kernel_fp(&ff(5, &[1, -1])).unwrap().dim(), 0);
        assert_eq!(anisotropic_kernel_fp(&ff(5, &[1])).unwrap(), ff(5, &[1]));
        let q = ff(3, &[1, 1, 1]);
        let k = anisotropic_kernel_fp(&q).unwrap();
        assert_eq!(k.dim(), 1);
        assert!(witt_equivalent(&k, &q).unwrap());
        // <1,1> is anisotropic over F_3 (-1 is not a square)
        assert_eq!(anisotropic_kernel_fp(&ff(3, &[1, 1])).unwrap().dim(), 2);
        assert_eq!(anisotropic_kernel_fp(&ff(5, &[1, 1])).unwrap().dim(), 0);
        assert!(anisotropic_kernel_fp(&ff(13, &[1, 2, 3, 4, 5, 6, 7, 8])).unwrap().dim() <= 2);
    }

    #[test]
    fn ideal_examples() {
        let h = qf(&[1, -1]);
        for a in 0..=3 {
            assert!(ideal_membership(&h, lvl(a)));
        }
        assert!(!ideal_membership(&qf(&[1, 1]), lvl(2)));
        assert!(ideal_membership(&qf(&[1, 1]), lvl(1)));
        assert!(!ideal_membership(&qf(&[1]), lvl(1)));
        assert!(ideal_membership(&qf(&[1]), lvl(0)));
        assert!(ideal_membership(&qf(&[1; 8]), lvl(3)));
        // signature 4 cannot lie in I^3(Q), although every Hasse symbol is +1
        assert!(ideal_membership(&qf(&[1; 4]), lvl(2)));
        assert!(!ideal_membership(&qf(&[1; 4]), lvl(3)));
        assert!(IdealLevel::new(4).is_err());
    }
}
