//! Reduced-scale versions of the property suites, runnable from the CLI.

use std::fmt;

use num_bigint::BigInt;
use rand::Rng;

use crate::bounds::{merkurjev_lower, pfister3_lower_bound, quadratic_check, r_plus, spin_lower, spin_upper, Parity};
use crate::clifford::{cliff_mul, group_summary, group_summary_brute, pair_commutator, CliffordGroup};
use crate::field::{hilbert_symbol, least_nonresidue, relevant_places, BaseField, Fp, Sign};
use crate::forms::DiagonalForm;
use crate::group::FiniteGroup;
use crate::pfister::{assemble_phi, decompose_i1, decompose_i2, pfister_number_upper_fp, witt_sum};
use crate::sample;
use crate::witt::{ideal_membership, is_hyperbolic, witt_equivalent, IdealLevel};

/// Seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 20_240_229;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases, {} failures)", self.name, self.cases, self.failures.len())?;
        if let Some(first) = self.failures.first() {
            write!(f, "; first: {first}")?;
        }
        Ok(())
    }
}

struct Suite {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn done(self) -> SuiteReport {
        SuiteReport { name: self.name, cases: self.cases, failures: self.failures }
    }
}

fn hilbert_product(seed: u64) -> SuiteReport {
    let mut s = Suite::new("hilbert product formula");
    let mut rng = sample::rng(seed);
    for _ in 0..100 {
        let a = sample::rational(&mut rng, 50);
        let b = sample::rational(&mut rng, 50);
        let prod: Sign = relevant_places([&a, &b]).iter().map(|v| hilbert_symbol(&a, &b, v).unwrap()).product();
        s.check(prod == Sign::Plus, || format!("({a}, {b})"));
    }
    s.done()
}

fn hasse_invariance(seed: u64) -> SuiteReport {
    let mut s = Suite::new("Hasse invariant under permutation and square scaling");
    let mut rng = sample::rng(seed ^ 1);
    for _ in 0..50 {
        let dim = rng.gen_range(1..=6);
        let q = sample::form_q(&mut rng, dim, 50);
        let q2 = sample::shuffle_and_rescale(&mut rng, &q, 20);
        let mut places = q.places().unwrap();
        places.extend(q2.places().unwrap());
        let ok = places.iter().all(|v| q.hasse_witt(v).unwrap() == q2.hasse_witt(v).unwrap())
            && q.signed_discriminant() == q2.signed_discriminant();
        s.check(ok, || format!("{q} vs {q2}"));
    }
    s.done()
}

fn decompositions(seed: u64) -> Vec<SuiteReport> {
    let mut s1 = Suite::new("decompose_I1 is Witt-equivalent, <= n terms");
    let mut s2 = Suite::new("decompose_I2 is Witt-equivalent, <= n-2 terms");
    let mut rng = sample::rng(seed ^ 2);
    for _ in 0..50 {
        let q = sample::form_i1(&mut rng, 10, 50);
        let t = decompose_i1(&q).unwrap();
        let ok = t.len() <= q.dim() && witt_equivalent(&witt_sum(q.field(), &t).unwrap(), &q).unwrap();
        s1.check(ok, || q.to_string());
        let q = sample::form_i2(&mut rng, 10, 50);
        let t = decompose_i2(&q).unwrap();
        let ok =
            t.len() <= q.dim().saturating_sub(2) && witt_equivalent(&witt_sum(q.field(), &t).unwrap(), &q).unwrap();
        s2.check(ok, || q.to_string());
    }
    vec![s1.done(), s2.done()]
}

fn phi_fp(seed: u64) -> SuiteReport {
    // Over F_p with p = 1 mod 4, <1, 1> is hyperbolic and φ lies in I^3.
    let mut s = Suite::new("phi in I^3 over F_5 and F_13");
    let mut rng = sample::rng(seed ^ 3);
    for p in [5, 13] {
        for r in 1..=6 {
            let triples = sample::pfister_triples_fp(&mut rng, r, p);
            let phi = assemble_phi(&triples).unwrap();
            let dim_ok = phi.dim() == 7 * r + r % 2;
            let ok = dim_ok && ideal_membership(&phi, IdealLevel::new(3).unwrap());
            s.check(ok, || format!("p = {p}, r = {r}: {phi}"));
        }
    }
    s.done()
}

fn fp_witt_ring() -> SuiteReport {
    let mut s = Suite::new("I^2(F_p) = 0 and Pfister number 0 on I^3, p = 3, 5, 7");
    for p in [3u64, 5, 7] {
        let reps = [Fp::new(1, p), Fp::new(least_nonresidue(p) as i64, p)];
        for dim in (0..=4).step_by(2) {
            for code in 0..1usize << dim {
                let coeffs = (0..dim).map(|i| reps[code >> i & 1]).collect();
                let q = DiagonalForm::new(BaseField::PrimeField(p), coeffs).unwrap();
                if ideal_membership(&q, IdealLevel::new(2).unwrap()) {
                    let three = IdealLevel::new(3).unwrap();
                    s.check(is_hyperbolic(&q) && pfister_number_upper_fp(&q, three).unwrap() == 0, || q.to_string());
                }
            }
        }
    }
    s.done()
}

fn clifford_laws() -> SuiteReport {
    let mut s = Suite::new("Clifford commutator law and closed-form structure, n <= 6");
    for n in 2..=6 {
        let g = CliffordGroup { n };
        let els = g.elements();
        for x in &els {
            for y in &els {
                let xy = cliff_mul(x, y).unwrap();
                let yx = cliff_mul(y, x).unwrap();
                let comm = if xy == yx { Sign::Plus } else { Sign::Minus };
                s.check(comm == pair_commutator(x, y).unwrap(), || format!("{x}, {y}"));
            }
        }
        s.check(group_summary(n).ok() == group_summary_brute(n).ok(), || format!("summary n = {n}"));
    }
    s.done()
}

fn bound_consistency() -> SuiteReport {
    let mut s = Suite::new("bound ordering and quadratic root bracketing");
    for n in 15..=40 {
        let lo = spin_lower(n).unwrap().integer().unwrap();
        let up = spin_upper(n).unwrap().integer().unwrap();
        s.check(lo <= up, || format!("spin n = {n}"));
        if n % 4 == 0 {
            let m = merkurjev_lower(n).unwrap().integer().unwrap();
            s.check(lo <= m && m <= up, || format!("merkurjev n = {n}"));
        }
    }
    for n in (12..=30).step_by(2) {
        for parity in [Parity::Even, Parity::Odd] {
            let w = r_plus(n, parity).unwrap();
            let bound = pfister3_lower_bound(n).unwrap();
            let ceil = w.hi.ceil().to_integer();
            let floor = w.lo.floor().to_integer();
            let ok = &w.lo >= bound.value.upper()
                && quadratic_check(n, &ceil, parity).unwrap()
                && (floor < BigInt::from(0) || !quadratic_check(n, &floor, parity).unwrap());
            s.check(ok, || format!("r_+ n = {n} {parity}"));
        }
    }
    s.done()
}

/// Every suite at reduced scale; deterministic in `seed`.
pub fn run_selftest(seed: u64) -> Vec<SuiteReport> {
    let mut out = vec![hilbert_product(seed), hasse_invariance(seed)];
    out.extend(decompositions(seed));
    out.extend([phi_fp(seed), fp_witt_ring(), clifford_laws(), bound_consistency()]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        let reports = run_selftest(DEFAULT_SEED);
        for r in &reports {
            assert!(r.passed(), "{r}");
        }
        assert_eq!(reports, run_selftest(DEFAULT_SEED));
    }
}
