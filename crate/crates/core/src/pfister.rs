//! Pfister forms, the explicit decompositions of `I^1` and `I^2` classes into
//! signed sums of Pfister forms, and the assembly of the form `φ` from
//! 3-fold Pfister slots.
//!
//! Convention: `<<a_1, ..., a_r>> = <1, a_1> ⊗ ... ⊗ <1, a_r>`, so
//! `<<a, b, c>> = <1, a, b, c, ab, ac, bc, abc>`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{least_nonresidue, BaseField, FieldElem, Fp, Sign};
use crate::forms::DiagonalForm;
use crate::witt::{anisotropic_kernel_fp, ideal_membership, is_hyperbolic, witt_equivalent, IdealLevel};

/// A signed `r`-fold Pfister form, `r` in `1..=3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PfisterSlots<K> {
    sign: Sign,
    slots: Vec<K>,
}

impl<K: FieldElem> PfisterSlots<K> {
    pub fn new(sign: Sign, slots: Vec<K>) -> Result<Self> {
        if slots.is_empty() || slots.len() > 3 {
            return Err(Error::WrongFold { expected: "1..=3", got: slots.len() });
        }
        let field = slots[0].base_field();
        for s in &slots {
            if s.base_field() != field {
                return Err(Error::FieldMismatch(field.to_string(), s.base_field().to_string()));
            }
            if s.is_zero_elem() {
                return Err(Error::Zero("Pfister slot"));
            }
        }
        Ok(PfisterSlots { sign, slots })
    }

    pub fn fold(&self) -> usize {
        self.slots.len()
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn slots(&self) -> &[K] {
        &self.slots
    }

    pub fn field(&self) -> BaseField {
        self.slots[0].base_field()
    }

    /// The `2^r`-dimensional form of subset products, ordered by subset size
    /// and then lexicographically (`1, a, b, c, ab, ac, bc, abc`).
    pub fn expand(&self) -> DiagonalForm<K> {
        let field = self.field();
        let r = self.slots.len();
        let mut subsets: Vec<u32> = (0..1u32 << r).collect();
        subsets.sort_by_key(|&m| {
            let idx: Vec<u32> = (0..r as u32).filter(|i| m >> i & 1 == 1).collect();
            (idx.len(), idx)
        });
        let one = K::from_int(&field, 1).expect("field matches");
        let coeffs = subsets
            .into_iter()
            .map(|m| (0..r).filter(|i| m >> i & 1 == 1).fold(one.clone(), |acc, i| acc * self.slots[i].clone()))
            .collect();
        DiagonalForm::new(field, coeffs).expect("products of nonzero slots")
    }

    /// The expansion multiplied by the sign, i.e. this term's contribution to a Witt sum.
    pub fn signed_expansion(&self) -> DiagonalForm<K> {
        let e = self.expand();
        match self.sign {
            Sign::Plus => e,
            Sign::Minus => e.negate(),
        }
    }

    /// `<<a,b,c>>_0`: the 3-fold expansion without its leading `<1>`.
    pub fn pure_part(&self) -> Result<DiagonalForm<K>> {
        if self.fold() != 3 {
            return Err(Error::WrongFold { expected: "3", got: self.fold() });
        }
        let mut coeffs = self.expand().into_coeffs();
        coeffs.remove(0);
        DiagonalForm::new(self.field(), coeffs)
    }
}

impl<K: fmt::Display> fmt::Display for PfisterSlots<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<<", self.sign)?;
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(">>")
    }
}

pub fn expand_pfister<K: FieldElem>(p: &PfisterSlots<K>) -> DiagonalForm<K> {
    p.expand()
}

pub fn pure_part<K: FieldElem>(p: &PfisterSlots<K>) -> Result<DiagonalForm<K>> {
    p.pure_part()
}

/// The signed Witt sum of `terms` as a single diagonal form.
pub fn witt_sum<K: FieldElem>(field: BaseField, terms: &[PfisterSlots<K>]) -> Result<DiagonalForm<K>> {
    terms.iter().try_fold(DiagonalForm::empty(field), |acc, t| acc.direct_sum(&t.signed_expansion()))
}

fn int<K: FieldElem>(field: &BaseField, v: i64) -> K {
    K::from_int(field, v).expect("field matches")
}

/// Remove pairs of terms that cancel in the Witt ring (equal classes, opposite signs).
fn cancel_opposites<K: FieldElem>(terms: Vec<PfisterSlots<K>>) -> Vec<PfisterSlots<K>> {
    let mut alive = vec![true; terms.len()];
    for i in 0..terms.len() {
        if !alive[i] {
            continue;
        }
        for j in i + 1..terms.len() {
            if alive[j]
                && terms[i].sign != terms[j].sign
                && witt_equivalent(&terms[i].expand(), &terms[j].expand()).expect("same field")
            {
                alive[i] = false;
                alive[j] = false;
                break;
            }
        }
    }
    terms.into_iter().zip(alive).filter_map(|(t, a)| a.then_some(t)).collect()
}

/// At most `n` signed 1-fold Pfister forms summing to `q` in the Witt ring,
/// from `<a, b> ~ <<a>> - <<-b>>` applied to consecutive pairs.
pub fn decompose_i1<K: FieldElem>(q: &DiagonalForm<K>) -> Result<Vec<PfisterSlots<K>>> {
    if !ideal_membership(q, IdealLevel::new(1)?) {
        return Err(Error::NotInIdeal(q.dim(), 1));
    }
    let mut terms = Vec::with_capacity(q.dim());
    for pair in q.coeffs().chunks(2) {
        let (a, b) = (pair[0].clone(), pair[1].clone());
        terms.push(PfisterSlots::new(Sign::Plus, vec![a])?);
        terms.push(PfisterSlots::new(Sign::Minus, vec![-b])?);
    }
    terms.retain(|t| !is_hyperbolic(&t.expand()));
    Ok(cancel_opposites(terms))
}

/// At most `n - 2` signed 2-fold Pfister forms summing to `q ∈ I^2`:
///
/// `q ~ sum_{i=2}^{n} (-1)^i <<(-1)^i a_i, (-1)^{i(i-1)/2+1} a_1...a_{i-1}>>`
///
/// The `<<y_i>>`-parts telescope through `<c, -c> ~ 0`, leaving
/// `<a_1> + ... + <a_n>` plus `<1> - d±(q)`, which vanishes on `I^2`. The
/// `i = n` term is `<<a_n, -a_n>>`, hence hyperbolic; every hyperbolic term is
/// dropped.
pub fn decompose_i2<K: FieldElem>(q: &DiagonalForm<K>) -> Result<Vec<PfisterSlots<K>>> {
    if !ideal_membership(q, IdealLevel::new(2)?) {
        return Err(Error::NotInIdeal(q.dim(), 2));
    }
    let field = q.field();
    let a: Vec<K> = q.coeffs().iter().map(|c| c.square_class().expect("nonzero")).collect();
    let n = a.len();
    let mut terms = Vec::new();
    let mut prefix = a.first().cloned().unwrap_or_else(|| int(&field, 1));
    for i in 2..=n {
        let ai = a[i - 1].clone();
        let x = if i % 2 == 1 { -ai.clone() } else { ai.clone() };
        let y = if (i * (i - 1) / 2 + 1) % 2 == 1 { -prefix.clone() } else { prefix.clone() };
        let sign = Sign::from_parity(i % 2 == 1);
        let term = PfisterSlots::new(sign, vec![x, y])?;
        if !is_hyperbolic(&term.expand()) {
            terms.push(term);
        }
        prefix = K::mul_classes(&prefix, &ai);
    }
    Ok(terms)
}

/// `φ = Σ <<a_i,b_i,c_i>>_0`, prefixed by `<1>` when `r` is odd. A term with a
/// negative sign contributes its negated pure part.
pub fn assemble_phi<K: FieldElem>(triples: &[PfisterSlots<K>]) -> Result<DiagonalForm<K>> {
    let first = triples.first().ok_or(Error::Empty("assemble_phi needs at least one triple"))?;
    let field = first.field();
    let mut phi =
        if triples.len() % 2 == 1 { DiagonalForm::from_ints(field, &[1])? } else { DiagonalForm::empty(field) };
    for t in triples {
        let p = t.pure_part()?;
        let p = if t.sign().is_minus() { p.negate() } else { p };
        phi = phi.direct_sum(&p)?;
    }
    Ok(phi)
}

/// Witt class of a form over F_p: classes are determined by the dimension of
/// the anisotropic kernel and its signed discriminant.
fn fp_class(q: &DiagonalForm<Fp>) -> (usize, Fp) {
    let k = anisotropic_kernel_fp(q).expect("form over F_p");
    (k.dim(), k.signed_discriminant())
}

/// Least number of signed `a`-fold Pfister forms whose sum is Witt-equivalent
/// to `q`, by breadth-first search in the finite Witt ring of F_p. Slots range
/// over the square-class representatives `{1, ε}`; for `a = 0` the only
/// generator is `<1>`.
pub fn pfister_number_upper_fp(q: &DiagonalForm<Fp>, level: IdealLevel) -> Result<usize> {
    let BaseField::PrimeField(p) = q.field() else {
        return Err(Error::WrongField { expected: "F_p", got: q.field().to_string() });
    };
    if !ideal_membership(q, level) {
        return Err(Error::NotInIdeal(q.dim(), level.get()));
    }
    let field = q.field();
    let a = level.get() as usize;
    let reps = [Fp::new(1, p), Fp::new(least_nonresidue(p) as i64, p)];
    let mut generators: Vec<DiagonalForm<Fp>> = Vec::new();
    if a == 0 {
        generators.push(DiagonalForm::from_ints(field, &[1])?);
    } else {
        for code in 0..1usize << a {
            let slots = (0..a).map(|i| reps[code >> i & 1]).collect();
            generators.push(PfisterSlots::new(Sign::Plus, slots)?.expand());
        }
    }
    let target = fp_class(q);
    let zero = DiagonalForm::empty(field);
    let mut seen: HashSet<(usize, Fp)> = HashSet::from([fp_class(&zero)]);
    let mut frontier: HashMap<(usize, Fp), DiagonalForm<Fp>> = HashMap::from([(fp_class(&zero), zero)]);
    let mut steps = 0;
    loop {
        if frontier.contains_key(&target) {
            return Ok(steps);
        }
        if frontier.is_empty() {
            return Err(Error::Precondition(format!("class of {q} not reachable by {a}-fold Pfister sums")));
        }
        steps += 1;
        let mut next = HashMap::new();
        let mut keys: Vec<_> = frontier.keys().cloned().collect();
        keys.sort();
        for key in keys {
            let base = &frontier[&key];
            for g in &generators {
                for term in [g.clone(), g.negate()] {
                    let sum = anisotropic_kernel_fp(&base.direct_sum(&term)?)?;
                    let class = fp_class(&sum);
                    if seen.insert(class) {
                        next.insert(class, sum);
                    }
                }
            }
        }
        frontier = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    const Q: BaseField = BaseField::Rationals;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn qf(cs: &[i64]) -> DiagonalForm<Rational> {
        DiagonalForm::from_ints(Q, cs).unwrap()
    }

    fn slots(sign: Sign, cs: &[i64]) -> PfisterSlots<Rational> {
        PfisterSlots::new(sign, cs.iter().map(|&c| q(c)).collect()).unwrap()
    }

    #[test]
    fn expansion_order() {
        assert_eq!(slots(Sign::Plus, &[5]).expand(), qf(&[1, 5]));
        assert_eq!(slots(Sign::Plus, &[2, 3]).expand(), qf(&[1, 2, 3, 6]));
        assert_eq!(slots(Sign::Plus, &[2, 3, 5]).expand(), qf(&[1, 2, 3, 5, 6, 10, 15, 30]));
        assert_eq!(slots(Sign::Plus, &[1, 1, 1]).expand(), qf(&[1; 8]));
        assert_eq!(slots(Sign::Minus, &[2]).signed_expansion(), qf(&[-1, -2]));
    }

    #[test]
    fn pure_parts() {
        assert_eq!(slots(Sign::Plus, &[1, 1, 1]).pure_part().unwrap(), qf(&[1; 7]));
        let p = slots(Sign::Plus, &[-1, 3, 5]).pure_part().unwrap();
        assert_eq!(p.dim(), 7);
        assert_eq!(p.coeffs()[0], q(-1));
        assert!(slots(Sign::Plus, &[1, 1]).pure_part().is_err());
    }

    #[test]
    fn slot_validation() {
        assert!(PfisterSlots::<Rational>::new(Sign::Plus, vec![]).is_err());
        assert!(PfisterSlots::new(Sign::Plus, vec![q(1); 4]).is_err());
        assert!(PfisterSlots::new(Sign::Plus, vec![q(0)]).is_err());
    }

    #[test]
    fn decompose_i1_examples() {
        assert!(decompose_i1(&qf(&[7, -7])).unwrap().is_empty());
        assert_eq!(decompose_i1(&qf(&[1, 1])).unwrap(), vec![slots(Sign::Plus, &[1])]);
        let f = qf(&[3, 5]);
        let d = decompose_i1(&f).unwrap();
        assert_eq!(d.len(), 2);
        assert!(witt_equivalent(&witt_sum(Q, &d).unwrap(), &f).unwrap());
        assert!(decompose_i1(&qf(&[1, 2, 3])).is_err());
    }

    #[test]
    fn decompose_i2_examples() {
        assert!(decompose_i2(&DiagonalForm::<Rational>::hyperbolic(Q, 2)).unwrap().is_empty());
        for cs in [[1, 1, 1, 1], [1, 2, 3, 6], [2, 3, -5, -30], [-1, -1, 7, 7]] {
            let f = qf(&cs);
            let d = decompose_i2(&f).unwrap();
            assert!(d.len() <= 2, "{f}: {d:?}");
            assert!(witt_equivalent(&witt_sum(Q, &d).unwrap(), &f).unwrap(), "{f}");
        }
        let d = decompose_i2(&qf(&[1, 1, 1, 1])).unwrap();
        assert!(witt_equivalent(&witt_sum(Q, &d).unwrap(), &slots(Sign::Plus, &[1, 1]).expand()).unwrap());
        assert!(decompose_i2(&qf(&[1, 1])).is_err());
    }

    #[test]
    fn cancellation_lemma() {
        for (x, c) in [(2, 3), (-5, 7), (1, 1), (6, -1)] {
            assert!(is_hyperbolic(&slots(Sign::Plus, &[x, -x]).expand()));
            assert!(is_hyperbolic(&slots(Sign::Plus, &[x, -x, c]).expand()));
        }
    }

    #[test]
    fn phi_assembly() {
        let t = slots(Sign::Plus, &[1, 1, 1]);
        assert_eq!(assemble_phi(&[t.clone(), t.clone()]).unwrap().dim(), 14);
        let phi1 = assemble_phi(std::slice::from_ref(&t)).unwrap();
        assert_eq!(phi1, qf(&[1; 8]));
        assert!(ideal_membership(&phi1, IdealLevel::new(3).unwrap()));
        assert!(assemble_phi::<Rational>(&[]).is_err());
        assert!(assemble_phi(&[slots(Sign::Plus, &[1, 2])]).is_err());
    }

    #[test]
    fn phi_differs_from_pfister_sum_by_ones() {
        // Σ s_i <<..>> ~ φ ⊕ (Σ s_i <1>) - [r odd] <1>
        let triples = [slots(Sign::Plus, &[2, 3, 5]), slots(Sign::Plus, &[-1, 7, 3]), slots(Sign::Minus, &[6, 6, -2])];
        for r in 1..=3 {
            let ts = &triples[..r];
            let phi = assemble_phi(ts).unwrap();
            let mut ones: Vec<i64> = ts.iter().map(|t| t.sign().to_i8() as i64).collect();
            if r % 2 == 1 {
                ones.push(-1);
            }
            let lhs = phi.direct_sum(&qf(&ones)).unwrap();
            assert!(witt_equivalent(&lhs, &witt_sum(Q, ts).unwrap()).unwrap());
        }
    }

    #[test]
    fn pfister_numbers_over_fp() {
        let f3 = BaseField::PrimeField(3);
        let p1 = PfisterSlots::new(Sign::Plus, vec![Fp::new(1, 3)]).unwrap().expand();
        assert_eq!(pfister_number_upper_fp(&p1, IdealLevel::new(1).unwrap()).unwrap(), 1);
        for a in 0..=3 {
            let h = DiagonalForm::<Fp>::hyperbolic(f3, 2);
            assert_eq!(pfister_number_upper_fp(&h, IdealLevel::new(a).unwrap()).unwrap(), 0);
        }
        let odd = DiagonalForm::<Fp>::from_ints(f3, &[1]).unwrap();
        assert!(pfister_number_upper_fp(&odd, IdealLevel::new(1).unwrap()).is_err());
        assert_eq!(pfister_number_upper_fp(&odd, IdealLevel::new(0).unwrap()).unwrap(), 1);
    }
}
