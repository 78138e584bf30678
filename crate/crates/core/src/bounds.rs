//! Exact evaluators for the essential-dimension bounds of spinor groups and
//! for the Pfister-number bound on forms in `I^3`.
//!
//! Every value is an exact rational except the positive root `r_+` of the
//! quadratic inequality and `2^{(n+4)/4}` for `n = 2 mod 4`, which are
//! carried as rational enclosures ([`RealWitness`]).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Target width for every enclosure.
pub fn tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000_000))
}

/// Whether a calculator refuses `n` outside the range the formula is stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RangePolicy {
    #[default]
    Enforce,
    /// Evaluate the expression anyway; the report's validity note says so.
    Explore,
}

/// Closed rational interval `[lo, hi]` around a real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealWitness {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RealWitness {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl fmt::Display for RealWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", decimal(&self.lo, 10, false), decimal(&self.hi, 10, true))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundValue {
    Exact(BigRational),
    Enclosed(RealWitness),
}

impl BoundValue {
    fn int(v: BigInt) -> Self {
        BoundValue::Exact(BigRational::from_integer(v))
    }

    /// The value when it is an exact integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            BoundValue::Exact(q) if q.is_integer() => Some(q.to_integer()),
            _ => None,
        }
    }

    /// A rational lower bound for the value.
    pub fn lower(&self) -> &BigRational {
        match self {
            BoundValue::Exact(q) => q,
            BoundValue::Enclosed(w) => &w.lo,
        }
    }

    /// A rational upper bound for the value.
    pub fn upper(&self) -> &BigRational {
        match self {
            BoundValue::Exact(q) => q,
            BoundValue::Enclosed(w) => &w.hi,
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(q) => write!(f, "{q}"),
            BoundValue::Enclosed(w) => write!(f, "{w}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub name: &'static str,
    pub n: u32,
    pub value: BoundValue,
    pub vacuous: bool,
    pub validity: String,
    /// Secondary integers, e.g. the representation dimension or least integer.
    pub details: Vec<(&'static str, BigInt)>,
}

impl BoundReport {
    fn exact(name: &'static str, n: u32, v: BigInt, validity: String) -> Self {
        let vacuous = !v.is_positive();
        BoundReport { name, n, value: BoundValue::int(v), vacuous, validity, details: Vec::new() }
    }

    pub fn integer(&self) -> Option<BigInt> {
        self.value.as_integer()
    }

    pub fn detail(&self, key: &str) -> Option<&BigInt> {
        self.details.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

fn dim_spin(n: u32) -> BigInt {
    BigInt::from(n) * BigInt::from(n - 1) / 2
}

fn check(what: &'static str, n: u32, ok: bool, range: &'static str, policy: RangePolicy) -> Result<String> {
    match (ok, policy) {
        (true, _) => Ok(range.to_string()),
        (false, RangePolicy::Explore) => Ok(format!("outside {range} (explored)")),
        (false, RangePolicy::Enforce) => Err(Error::OutOfRange { what, n: n as i64, range }),
    }
}

fn congruence(n: u32) -> &'static str {
    match n % 4 {
        0 => "n = 0 mod 4",
        2 => "n = 2 mod 4",
        _ => "n odd",
    }
}

/// `ed(G_n) - dim Spin_n`: the lower bound for `ed(Spin_n)` and `ed(Spin_n; 2)`.
/// Negative (vacuous) for `n <= 14`.
pub fn spin_lower(n: u32) -> Result<BoundReport> {
    if n < 3 {
        return Err(Error::OutOfRange { what: "spin_lower", n: n as i64, range: "n >= 3" });
    }
    let v = match n % 4 {
        0 => pow2((n - 2) / 2) - dim_spin(n) + 1,
        2 => pow2((n - 2) / 2) - dim_spin(n),
        _ => pow2((n - 1) / 2) - dim_spin(n),
    };
    Ok(BoundReport::exact("spin_lower", n, v, format!("n >= 3, {}", congruence(n))))
}

/// Dimension of a generically free representation of `Spin_n`.
pub fn spin_rep_dimension(n: u32) -> BigInt {
    match n % 4 {
        0 => pow2((n - 2) / 2) + n,
        2 => pow2((n - 2) / 2),
        _ => pow2((n - 1) / 2),
    }
}

pub fn spin_upper(n: u32) -> Result<BoundReport> {
    spin_upper_with(n, RangePolicy::Enforce)
}

/// Representation dimension minus `dim Spin_n`.
pub fn spin_upper_with(n: u32, policy: RangePolicy) -> Result<BoundReport> {
    if n < 3 {
        return Err(Error::OutOfRange { what: "spin_upper", n: n as i64, range: "n >= 3" });
    }
    let validity = check("spin_upper", n, n >= 15, "n >= 15", policy)?;
    let rep = spin_rep_dimension(n);
    let mut r = BoundReport::exact("spin_upper", n, &rep - dim_spin(n), format!("{validity}, {}", congruence(n)));
    r.details.push(("rep_dimension", rep));
    Ok(r)
}

/// 2-adic valuation of `n > 0`.
fn v2(n: u32) -> u32 {
    n.trailing_zeros()
}

/// Refined lower bound for `4 | n`: `2^{(n-2)/2} - n(n-1)/2 + 2^{v_2(n)}`.
pub fn merkurjev_lower(n: u32) -> Result<BoundReport> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::OutOfRange { what: "merkurjev_lower", n: n as i64, range: "4 | n, n > 0" });
    }
    let v = pow2((n - 2) / 2) - dim_spin(n) + pow2(v2(n));
    Ok(BoundReport::exact("merkurjev_lower", n, v, format!("4 | n, 2^{} || n", v2(n))))
}

pub fn chernousov_serre_lower(n: u32) -> Result<BoundReport> {
    chernousov_serre_lower_with(n, RangePolicy::Enforce)
}

/// `floor(n/2) + 1` for `n >= 7`, `n = 0, 1, 7 mod 8`; `floor(n/2)` for other `n >= 11`.
pub fn chernousov_serre_lower_with(n: u32, policy: RangePolicy) -> Result<BoundReport> {
    let special = matches!(n % 8, 0 | 1 | 7);
    let (ok, range) = if special { (n >= 7, "n >= 7, n = 0, 1, 7 mod 8") } else { (n >= 11, "n >= 11") };
    let validity = check("chernousov_serre_lower", n, ok, range, policy)?;
    let v = BigInt::from(n / 2 + special as u32);
    Ok(BoundReport::exact("chernousov_serre_lower", n, v, validity))
}

/// Exact values of `ed(Spin_n)` for `3 <= n <= 14`.
pub fn rost_table(n: u32) -> Result<u32> {
    const TABLE: [u32; 12] = [0, 0, 0, 0, 4, 5, 5, 4, 5, 6, 6, 7];
    if !(3..=14).contains(&n) {
        return Err(Error::OutOfRange { what: "rost_table", n: n as i64, range: "3 <= n <= 14" });
    }
    Ok(TABLE[(n - 3) as usize])
}

pub fn hspin_value(n: u32) -> Result<BoundReport> {
    hspin_value_with(n, RangePolicy::Enforce)
}

/// `ed(HSpin_n) = 2^{(n-2)/2} - n(n-1)/2` for `4 | n`, `n >= 20`.
pub fn hspin_value_with(n: u32, policy: RangePolicy) -> Result<BoundReport> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::OutOfRange { what: "hspin_value", n: n as i64, range: "4 | n, n >= 20" });
    }
    let validity = check("hspin_value", n, n >= 20, "4 | n, n >= 20", policy)?;
    Ok(BoundReport::exact("hspin_value", n, pow2((n - 2) / 2) - dim_spin(n), validity))
}

/// Interval for `ed(T_n)`: the best available lower bound for `ed(Spin_n)`
/// minus one, and the upper bound for `ed(Spin_n)`.
pub fn tn_interval(n: u32) -> Result<(BoundReport, BoundReport)> {
    if n < 15 {
        return Err(Error::OutOfRange { what: "tn_interval", n: n as i64, range: "n >= 15" });
    }
    let base = if n.is_multiple_of(4) { merkurjev_lower(n)? } else { spin_lower(n)? };
    let lo = base.integer().expect("integer bound") - 1;
    let mut lower = BoundReport::exact("tn_lower", n, lo, format!("n >= 15, from {} - 1", base.name));
    lower.vacuous = base.vacuous;
    let up = spin_upper(n)?;
    let upper =
        BoundReport { name: "tn_upper", validity: "n >= 15, from spin_upper".into(), details: Vec::new(), ..up };
    Ok((lower, upper))
}

/// Dimension `s(s + 2n - 1)/2` of the Grassmannian of `s`-planes used to split off `h^s`.
pub fn grassmannian_penalty(s: u64, n: u64) -> BigInt {
    let s = BigInt::from(s);
    (&s * (&s + 2 * BigInt::from(n) - 1)) / 2
}

/// Enclosure of `sqrt(x)` for `x >= 0` with width `2^{-bits}`.
fn sqrt_enclosure(x: &BigInt, bits: u32) -> RealWitness {
    let scale = pow2(bits);
    let root = (x * &scale * &scale).sqrt();
    let exact = &root * &root == x * &scale * &scale;
    let lo = BigRational::new(root.clone(), scale.clone());
    let hi = if exact { lo.clone() } else { BigRational::new(root + 1, scale) };
    RealWitness { lo, hi }
}

/// `(2^{(n+4)/4} - n - 2) / 7`, the minimal number of 3-fold Pfister forms
/// needed for a generic `n`-dimensional form in `I^3`. Vacuous when `<= 0`.
pub fn pfister3_lower_bound(n: u32) -> Result<BoundReport> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::OutOfRange { what: "pfister3_lower_bound", n: n as i64, range: "n even, n >= 2" });
    }
    let seven = BigInt::from(7);
    let shift = BigInt::from(n + 2);
    let value = if n.is_multiple_of(4) {
        BoundValue::Exact(BigRational::new(pow2((n + 4) / 4) - &shift, seven))
    } else {
        // 2^{(n+4)/4} = sqrt(2^{(n+4)/2}); n = 2 mod 4 makes it irrational.
        let mut bits = 40;
        loop {
            let r = sqrt_enclosure(&pow2((n + 4) / 2), bits);
            let sh = BigRational::from_integer(shift.clone());
            let s = BigRational::from_integer(seven.clone());
            let w = RealWitness { lo: (r.lo - &sh) / &s, hi: (r.hi - &sh) / &s };
            if w.width() < tolerance() && w.lo.ceil() == w.hi.ceil() {
                break BoundValue::Enclosed(w);
            }
            bits += 8;
        }
    };
    let vacuous = !value.lower().is_positive();
    let least = value.upper().ceil().to_integer().max(BigInt::zero());
    let mut report = BoundReport {
        name: "pfister3_lower_bound",
        n,
        value,
        vacuous,
        validity: "n even, n >= 2".to_string(),
        details: Vec::new(),
    };
    report.details.push(("least_integer", least));
    Ok(report)
}

/// Parity of the number `r` of Pfister forms in the quadratic inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(r: &BigInt) -> Self {
        if r.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Coefficients `(b, c)` of `49 r^2 + b r + c`, eight times the slack of the
/// inequality after substituting `s = (7r - n)/2` (even) or `(7r + 1 - n)/2` (odd).
fn quadratic_coeffs(n: u32, parity: Parity) -> (BigInt, BigInt) {
    let n_ = BigInt::from(n);
    let p = pow2((n + 4) / 2);
    match parity {
        Parity::Even => (BigInt::from(14 * n + 10), &n_ * &n_ - 2 * &n_ + 8 - p),
        Parity::Odd => (BigInt::from(14 * n + 24), &n_ * &n_ + 7 - p),
    }
}

/// Value of the quadratic at a rational `r`.
pub fn quadratic_value(n: u32, parity: Parity, r: &BigRational) -> BigRational {
    let (b, c) = quadratic_coeffs(n, parity);
    let b = BigRational::from_integer(b);
    let c = BigRational::from_integer(c);
    BigRational::from_integer(BigInt::from(49)) * r * r + b * r + c
}

fn check_quadratic_domain(what: &'static str, n: u32) -> Result<()> {
    if n < 12 || n % 2 == 1 {
        return Err(Error::OutOfRange { what, n: n as i64, range: "n even, n >= 12" });
    }
    Ok(())
}

/// Whether `r` satisfies the quadratic inequality (the polynomial is `>= 0` at `r`).
pub fn quadratic_check(n: u32, r: &BigInt, parity: Parity) -> Result<bool> {
    check_quadratic_domain("quadratic_check", n)?;
    if r.is_negative() {
        return Err(Error::Precondition(format!("r = {r} must be nonnegative")));
    }
    Ok(!quadratic_value(n, parity, &BigRational::from_integer(r.clone())).is_negative())
}

/// The radical expression for `r_+`, enclosed to width about `2^{-bits}/49`.
fn r_plus_radical(n: u32, parity: Parity, bits: u32) -> RealWitness {
    let (k, shift) = match parity {
        Parity::Even => (367, 7 * n + 5),
        Parity::Odd => (199, 7 * n + 12),
    };
    let disc = 49 * pow2((n + 4) / 2) + BigInt::from(168 * n) - k;
    let root = sqrt_enclosure(&disc, bits);
    let sh = BigRational::from_integer(BigInt::from(shift));
    let d = BigRational::from_integer(BigInt::from(49));
    RealWitness { lo: (root.lo - &sh) / &d, hi: (root.hi - &sh) / &d }
}

/// The positive root `r_+` of the quadratic inequality for even `n >= 12`.
///
/// A coarse enclosure of the radical expression is refined by bisection on
/// the exact polynomial until narrower than [`tolerance`], then checked
/// against a fine radical enclosure and against [`pfister3_lower_bound`].
pub fn r_plus(n: u32, parity: Parity) -> Result<RealWitness> {
    check_quadratic_domain("r_plus", n)?;
    let coarse = r_plus_radical(n, parity, 8);
    let mut w = RealWitness { lo: coarse.lo - BigRational::one(), hi: coarse.hi + BigRational::one() };
    let f = |x: &BigRational| quadratic_value(n, parity, x);
    if !(f(&w.lo).is_negative() && !f(&w.hi).is_negative()) {
        return Err(Error::Precondition(format!("no sign change of the quadratic on {w} (n = {n})")));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    while w.width() >= tolerance() {
        let mid = (&w.lo + &w.hi) / &two;
        if f(&mid).is_negative() {
            w.lo = mid;
        } else {
            w.hi = mid;
        }
    }
    let fine = r_plus_radical(n, parity, 48);
    if fine.hi < w.lo || w.hi < fine.lo {
        return Err(Error::Precondition(format!("radical {fine} and bisection {w} disagree (n = {n})")));
    }
    let bound = pfister3_lower_bound(n)?;
    if &w.lo < bound.value.upper() {
        return Err(Error::Precondition(format!("r_+ {w} below the Pfister bound {} (n = {n})", bound.value)));
    }
    Ok(w)
}

/// Fixed-point decimal rendering with `digits` fractional digits, rounded
/// down (or up when `up`), so enclosures only ever widen when printed.
pub fn decimal(q: &BigRational, digits: u32, up: bool) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = q * BigRational::from_integer(scale.clone());
    let k = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let neg = k.is_negative();
    let (int, frac) = k.abs().div_rem(&scale);
    format!("{}{}.{:0>width$}", if neg { "-" } else { "" }, int, frac.to_string(), width = digits as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(r: Result<BoundReport>) -> i64 {
        i64::try_from(r.unwrap().integer().unwrap()).unwrap()
    }

    #[test]
    fn spin_examples() {
        assert_eq!(int(spin_lower(15)), 23);
        let r14 = spin_lower(14).unwrap();
        assert_eq!(r14.integer().unwrap(), BigInt::from(-27));
        assert!(r14.vacuous);
        assert_eq!(int(spin_lower(16)), 9);
        assert_eq!(int(spin_upper(16)), 24);
        assert_eq!(int(spin_upper(20)), 342);
        assert_eq!(int(spin_upper(15)), 23);
        assert!(spin_upper(14).is_err());
        assert_eq!(int(spin_upper_with(14, RangePolicy::Explore)), 64 - 91);
        assert_eq!(spin_upper(16).unwrap().detail("rep_dimension"), Some(&BigInt::from(144)));
        assert!(spin_lower(2).is_err());
    }

    #[test]
    fn merkurjev_and_hspin() {
        assert_eq!(int(merkurjev_lower(20)), 326);
        assert_eq!(int(merkurjev_lower(16)), 24);
        assert_eq!(int(merkurjev_lower(32)), 32304);
        assert!(merkurjev_lower(18).is_err());
        assert_eq!(int(hspin_value(20)), 322);
        assert_eq!(int(hspin_value(24)), 1772);
        assert!(hspin_value(16).is_err());
    }

    #[test]
    fn chernousov_serre() {
        assert_eq!(int(chernousov_serre_lower(7)), 4);
        assert_eq!(int(chernousov_serre_lower(11)), 5);
        assert_eq!(int(chernousov_serre_lower(12)), 6);
        assert!(chernousov_serre_lower(10).is_err());
        assert!(chernousov_serre_lower(6).is_err());
        assert_eq!(rost_table(3).unwrap(), 0);
        assert_eq!(rost_table(8).unwrap(), 5);
        assert_eq!(rost_table(14).unwrap(), 7);
        assert!(rost_table(15).is_err());
    }

    #[test]
    fn tn_examples() {
        for (n, lo, hi) in [(15, 22, 23), (16, 23, 24), (20, 325, 342)] {
            let (l, h) = tn_interval(n).unwrap();
            assert_eq!((l.integer().unwrap(), h.integer().unwrap()), (BigInt::from(lo), BigInt::from(hi)));
        }
    }

    #[test]
    fn penalty() {
        assert_eq!(grassmannian_penalty(0, 7), BigInt::zero());
        assert_eq!(grassmannian_penalty(1, 3), BigInt::from(3));
        assert_eq!(grassmannian_penalty(2, 5), BigInt::from(11));
    }

    #[test]
    fn pfister_bound_examples() {
        let r12 = pfister3_lower_bound(12).unwrap();
        assert_eq!(r12.value, BoundValue::Exact(BigRational::new(2.into(), 7.into())));
        assert_eq!(r12.detail("least_integer"), Some(&BigInt::one()));
        assert!(!r12.vacuous);
        assert_eq!(int(pfister3_lower_bound(20)), 6);
        let r10 = pfister3_lower_bound(10).unwrap();
        assert!(r10.vacuous && matches!(r10.value, BoundValue::Enclosed(_)));
        assert!(pfister3_lower_bound(11).is_err());
    }

    #[test]
    fn quadratic_examples() {
        assert!(!quadratic_check(12, &BigInt::zero(), Parity::Even).unwrap());
        assert!(quadratic_check(12, &BigInt::from(100), Parity::Even).unwrap());
        let w = r_plus(12, Parity::Even).unwrap();
        let up = w.hi.ceil().to_integer();
        let down = w.lo.floor().to_integer();
        assert!(quadratic_check(12, &up, Parity::Even).unwrap());
        if down >= BigInt::one() {
            assert!(!quadratic_check(12, &(down - 1), Parity::Even).unwrap());
        }
        assert!(w.width() < tolerance());
    }

    #[test]
    fn decimal_rendering() {
        let q = BigRational::new(BigInt::from(-2), BigInt::from(7));
        assert_eq!(decimal(&q, 3, false), "-0.286");
        assert_eq!(decimal(&q, 3, true), "-0.285");
        assert_eq!(decimal(&BigRational::from_integer(5.into()), 2, false), "5.00");
    }
}
