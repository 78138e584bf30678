//! The finite 2-group `G_n` of signed even products `±e_I` in the Clifford
//! algebra with relations `e_i^2 = -1`, `e_i e_j = -e_j e_i` (`i != j`).
//!
//! Elements are a sign plus a bitmask over `{1..n}` (bit `i-1` for index `i`).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::Sign;
use crate::group::{analyze, ed_formula, FiniteGroup, GroupStructure};

pub const MAX_N: u32 = 30;
/// Largest `n` at which [`group_summary`] cross-checks against enumeration.
pub const BRUTE_FORCE_MAX_N: u32 = 14;

/// `sign * e_I` with `|I|` even, inside `G_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliffordElement {
    sign: Sign,
    subset: u32,
    n: u32,
}

impl CliffordElement {
    pub fn new(sign: Sign, subset: u32, n: u32) -> Result<Self> {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::OutOfRange { what: "Clifford ambient dimension", n: n as i64, range: "1..=30" });
        }
        if subset >> n != 0 {
            return Err(Error::Precondition(format!("subset {subset:#b} exceeds {{1..{n}}}")));
        }
        if subset.count_ones() % 2 == 1 {
            return Err(Error::OddSubset(subset));
        }
        Ok(CliffordElement { sign, subset, n })
    }

    /// From 1-based indices, e.g. `&[1, 2]` for `e_{12}`.
    pub fn from_indices(sign: Sign, indices: &[u32], n: u32) -> Result<Self> {
        let mut mask = 0u32;
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::Precondition(format!("index {i} outside 1..={n}")));
            }
            mask ^= 1 << (i - 1);
        }
        Self::new(sign, mask, n)
    }

    pub fn identity(n: u32) -> Self {
        CliffordElement { sign: Sign::Plus, subset: 0, n }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn subset(&self) -> u32 {
        self.subset
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    pub fn indices(&self) -> Vec<u32> {
        (0..self.n).filter(|i| self.subset >> i & 1 == 1).map(|i| i + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        // e_I^2 = ±1 with sign (-1)^{|I|(|I|-1)/2 + |I|}; for even |I| that is (-1)^{|I|/2}.
        let k = self.subset.count_ones();
        CliffordElement { sign: self.sign * Sign::from_parity((k / 2) % 2 == 1), ..*self }
    }
}

/// Number of pairs `(i in I, j in J)` with `i > j`: the transpositions needed
/// to sort the word `e_I e_J`.
fn inversions(i_mask: u32, j_mask: u32) -> u32 {
    let mut t = 0;
    let mut rest = j_mask;
    while rest != 0 {
        let j = rest.trailing_zeros();
        t += (i_mask >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    t
}

/// Product in `G_n`: symmetric difference of the subsets, sign from the
/// sorting transpositions and from the `|I ∩ J|` squared generators.
pub fn cliff_mul(x: &CliffordElement, y: &CliffordElement) -> Result<CliffordElement> {
    if x.n != y.n {
        return Err(Error::AmbientMismatch(x.n, y.n));
    }
    for e in [x, y] {
        if e.subset.count_ones() % 2 == 1 {
            return Err(Error::OddSubset(e.subset));
        }
    }
    Ok(mul_unchecked(x, y))
}

fn mul_unchecked(x: &CliffordElement, y: &CliffordElement) -> CliffordElement {
    let flips = inversions(x.subset, y.subset) + (x.subset & y.subset).count_ones();
    CliffordElement { sign: x.sign * y.sign * Sign::from_parity(flips % 2 == 1), subset: x.subset ^ y.subset, n: x.n }
}

/// `[x, y] = (-1)^{|I ∩ J|}`.
pub fn pair_commutator(x: &CliffordElement, y: &CliffordElement) -> Result<Sign> {
    if x.n != y.n {
        return Err(Error::AmbientMismatch(x.n, y.n));
    }
    Ok(Sign::from_parity((x.subset & y.subset).count_ones() % 2 == 1))
}

/// `G_n` as an enumerable group, generated by `e_i e_{i+1}`.
#[derive(Clone, Copy, Debug)]
pub struct CliffordGroup {
    pub n: u32,
}

impl FiniteGroup for CliffordGroup {
    type Elem = CliffordElement;

    fn elements(&self) -> Vec<CliffordElement> {
        let n = self.n;
        (0..1u32 << n)
            .filter(|m| m.count_ones() % 2 == 0)
            .flat_map(|m| [Sign::Plus, Sign::Minus].map(|sign| CliffordElement { sign, subset: m, n }))
            .collect()
    }

    fn identity(&self) -> CliffordElement {
        CliffordElement::identity(self.n)
    }

    fn mul(&self, a: &CliffordElement, b: &CliffordElement) -> CliffordElement {
        mul_unchecked(a, b)
    }

    fn generators(&self) -> Vec<CliffordElement> {
        let n = self.n;
        let mut gens: Vec<CliffordElement> =
            (0..n.saturating_sub(1)).map(|i| CliffordElement { sign: Sign::Plus, subset: 0b11 << i, n }).collect();
        if gens.is_empty() {
            gens.push(self.identity());
        }
        gens
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CenterKind {
    Z2,
    Z4,
    Z2xZ2,
}

impl fmt::Display for CenterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CenterKind::Z2 => "Z2",
            CenterKind::Z4 => "Z4",
            CenterKind::Z2xZ2 => "Z2xZ2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSummary {
    pub n: u32,
    pub order: u64,
    pub center_kind: CenterKind,
    pub center_elements: Vec<CliffordElement>,
    pub commutator_subgroup_order: u64,
    pub exponent: u64,
    pub ed_value: u64,
}

impl GroupSummary {
    pub fn structure(&self) -> GroupStructure {
        GroupStructure {
            order: self.order,
            prime: Some(2),
            center_order: self.center_elements.len() as u64,
            center_rank: if self.center_kind == CenterKind::Z2xZ2 { 2 } else { 1 },
            commutator_order: self.commutator_subgroup_order,
            commutator_central: true,
            commutator_cyclic: true,
            exponent: self.exponent,
        }
    }
}

/// Closed-form structure of `G_n` for `2 <= n <= 30`:
/// center `{±1}` for odd `n`, `{±1, ±e_{1..n}}` otherwise, cyclic of order 4
/// exactly when `e_{1..n}^2 = -1`, i.e. `n = 2 mod 4`.
fn closed_form(n: u32) -> GroupSummary {
    let full = (1u32 << n) - 1;
    let mut center = vec![CliffordElement::identity(n), CliffordElement { sign: Sign::Minus, subset: 0, n }];
    let center_kind = if n % 2 == 1 {
        CenterKind::Z2
    } else {
        center.push(CliffordElement { sign: Sign::Plus, subset: full, n });
        center.push(CliffordElement { sign: Sign::Minus, subset: full, n });
        if n % 4 == 2 {
            CenterKind::Z4
        } else {
            CenterKind::Z2xZ2
        }
    };
    // G_2 = {±1, ±e_12} is abelian, so its commutator subgroup is trivial.
    let commutator_subgroup_order = if n == 2 { 1 } else { 2 };
    let mut s = GroupSummary {
        n,
        order: 1u64 << n,
        center_kind,
        center_elements: center,
        commutator_subgroup_order,
        exponent: 4,
        ed_value: 0,
    };
    s.ed_value = ed_formula(&s.structure()).expect("G_n satisfies the hypotheses");
    s
}

/// Structure of `G_n` by enumeration (feasible for `n <= 14` or so).
pub fn group_summary_brute(n: u32) -> Result<GroupSummary> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::OutOfRange { what: "group_summary", n: n as i64, range: "2..=30" });
    }
    let g = CliffordGroup { n };
    let s = analyze(&g);
    let gens = g.generators();
    let mut center: Vec<CliffordElement> =
        g.elements().into_iter().filter(|x| gens.iter().all(|y| mul_unchecked(x, y) == mul_unchecked(y, x))).collect();
    center.sort();
    let center_kind = match s.center_order {
        2 => CenterKind::Z2,
        4 if s.center_rank == 1 => CenterKind::Z4,
        4 => CenterKind::Z2xZ2,
        k => return Err(Error::Precondition(format!("unexpected center of order {k}"))),
    };
    Ok(GroupSummary {
        n,
        order: s.order,
        center_kind,
        center_elements: center,
        commutator_subgroup_order: s.commutator_order,
        exponent: s.exponent,
        ed_value: ed_formula(&s)?,
    })
}

/// Structure of `G_n`; for `n <= 14` the closed form is cross-checked by enumeration.
pub fn group_summary(n: u32) -> Result<GroupSummary> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::OutOfRange { what: "group_summary", n: n as i64, range: "2..=30" });
    }
    let mut s = closed_form(n);
    s.center_elements.sort();
    if n <= BRUTE_FORCE_MAX_N {
        let b = group_summary_brute(n)?;
        if b != s {
            return Err(Error::Precondition(format!("closed form disagrees with enumeration at n = {n}")));
        }
    }
    Ok(s)
}

/// `ed G_n`: `2^{(n-1)/2}` (n odd), `2^{(n-2)/2}` (n = 2 mod 4), `2^{(n-2)/2} + 1` (4 | n).
pub fn ed_of_clifford_group(n: u32) -> Result<u64> {
    Ok(group_summary(n)?.ed_value)
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().iter().map(u32::to_string).collect();
        write!(f, "{}e{{{}}}", self.sign, idx.join(","))
    }
}

impl CliffordElement {
    /// Parse `"+e{1,2,4}"` / `"-e{}"` in `G_n`.
    pub fn parse(s: &str, n: u32) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::parse("clifford element", format!("{t:?}: expected like +e{{1,2}}"));
        let (sign, rest) = match t.chars().next() {
            Some('+') => (Sign::Plus, &t[1..]),
            Some('-') => (Sign::Minus, &t[1..]),
            _ => return Err(bad()),
        };
        let inner = rest.strip_prefix("e{").and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
        let idx = inner
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| u32::from_str(x).map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(sign, &idx, n)
    }
}
