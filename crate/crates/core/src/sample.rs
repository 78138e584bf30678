//! Seeded random inputs for property suites and `selftest`.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{squarefree_class, BaseField, FieldElem, Fp, Rational, Sign};
use crate::forms::DiagonalForm;
use crate::pfister::PfisterSlots;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational with numerator and denominator at most `height` in absolute value.
pub fn rational(rng: &mut SampleRng, height: i64) -> Rational {
    let num = rng.gen_range(1..=height) * if rng.gen() { 1 } else { -1 };
    let den = rng.gen_range(1..=height);
    Rational::new(num.into(), den.into())
}

pub fn form_q(rng: &mut SampleRng, dim: usize, height: i64) -> DiagonalForm<Rational> {
    let coeffs = (0..dim).map(|_| rational(rng, height)).collect();
    DiagonalForm::new(BaseField::Rationals, coeffs).expect("nonzero coefficients")
}

pub fn form_fp(rng: &mut SampleRng, p: u64, dim: usize) -> DiagonalForm<Fp> {
    let coeffs = (0..dim).map(|_| Fp::new(rng.gen_range(1..p as i64), p)).collect();
    DiagonalForm::new(BaseField::PrimeField(p), coeffs).expect("nonzero coefficients")
}

fn even_dim(rng: &mut SampleRng, max_dim: usize) -> usize {
    2 * rng.gen_range(1..=max_dim / 2)
}

/// Even-dimensional form over Q, i.e. a representative of a class in `I`.
pub fn form_i1(rng: &mut SampleRng, max_dim: usize, height: i64) -> DiagonalForm<Rational> {
    let dim = even_dim(rng, max_dim);
    form_q(rng, dim, height)
}

/// Rationals of height at most `height` in the square class of `class`.
fn class_representatives(class: &BigInt, height: i64) -> Vec<Rational> {
    let h = BigInt::from(height);
    let mut out = Vec::new();
    for t in 1..=height {
        let num = class * t * t;
        if num.abs() > h {
            break;
        }
        for u in (1..=height).take_while(|u| u * u <= height) {
            let r = Rational::new(num.clone(), BigInt::from(u * u));
            if r.numer().abs() <= h && r.denom() <= &h && !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

/// Even-dimensional form over Q with trivial signed discriminant, i.e. in `I^2`.
/// The last coefficient is drawn from the representatives of the required
/// square class; draws whose class has none of bounded height are redrawn.
pub fn form_i2(rng: &mut SampleRng, max_dim: usize, height: i64) -> DiagonalForm<Rational> {
    loop {
        let dim = even_dim(rng, max_dim);
        let head = form_q(rng, dim - 1, height);
        // d± of the full form is (-1)^{n(n-1)/2} * prod(head) * last
        let sign = if (dim * (dim - 1) / 2) % 2 == 1 { -1 } else { 1 };
        let prod: Rational = head.coeffs().iter().cloned().fold(Rational::from_integer(sign.into()), |a, b| a * b);
        let class = squarefree_class(&prod).expect("nonzero");
        let reps = class_representatives(&class, height);
        if reps.is_empty() {
            continue;
        }
        let last = reps[rng.gen_range(0..reps.len())].clone();
        let mut coeffs = head.into_coeffs();
        coeffs.push(last);
        return DiagonalForm::new(BaseField::Rationals, coeffs).expect("nonzero coefficients");
    }
}

/// `r` positive 3-fold Pfister forms with slots of bounded height.
pub fn pfister_triples_q(rng: &mut SampleRng, r: usize, height: i64) -> Vec<PfisterSlots<Rational>> {
    (0..r)
        .map(|_| PfisterSlots::new(Sign::Plus, (0..3).map(|_| rational(rng, height)).collect()).expect("valid slots"))
        .collect()
}

pub fn pfister_triples_fp(rng: &mut SampleRng, r: usize, p: u64) -> Vec<PfisterSlots<Fp>> {
    (0..r)
        .map(|_| {
            let slots = (0..3).map(|_| Fp::new(rng.gen_range(1..p as i64), p)).collect();
            PfisterSlots::new(Sign::Plus, slots).expect("valid slots")
        })
        .collect()
}

/// Random permutation of the coefficients together with multiplication of each
/// by a random nonzero square.
pub fn shuffle_and_rescale<K: FieldElem>(rng: &mut SampleRng, q: &DiagonalForm<K>, height: i64) -> DiagonalForm<K> {
    let field = q.field();
    let mut coeffs = q.coeffs().to_vec();
    for i in (1..coeffs.len()).rev() {
        coeffs.swap(i, rng.gen_range(0..=i));
    }
    let coeffs = coeffs
        .into_iter()
        .map(|a| loop {
            let num = K::from_int(&field, rng.gen_range(1..=height)).expect("small integer");
            let den = K::from_int(&field, rng.gen_range(1..=height)).expect("small integer");
            if num.is_zero_elem() || den.is_zero_elem() {
                continue;
            }
            let t = num / den;
            break a.clone() * t.clone() * t;
        })
        .collect();
    DiagonalForm::new(field, coeffs).expect("nonzero coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::{ideal_membership, IdealLevel};

    #[test]
    fn seeded_and_in_range() {
        let a: Vec<_> = (0..5).map(|_| rational(&mut rng(7), 50)).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut r = rng(1);
        for _ in 0..200 {
            let x = rational(&mut r, 50);
            assert!(x.numer().abs() <= 50.into() && x.denom() <= &50.into());
        }
    }

    #[test]
    fn i2_samples_are_in_i2() {
        let mut r = rng(3);
        for _ in 0..100 {
            let q = form_i2(&mut r, 10, 50);
            assert!(q.dim().is_multiple_of(2) && q.dim() <= 10);
            assert!(ideal_membership(&q, IdealLevel::new(2).unwrap()), "{q}");
            assert!(q.coeffs().iter().all(|c| c.numer().abs() <= 50.into() && c.denom() <= &50.into()));
        }
    }

    #[test]
    fn representatives() {
        let reps = class_representatives(&BigInt::from(-3), 50);
        assert!(reps.contains(&Rational::new((-3).into(), 1.into())));
        assert!(reps.contains(&Rational::new((-27).into(), 4.into())));
        assert!(class_representatives(&BigInt::from(51), 50).is_empty());
    }
}
