//! Brute-force structure of explicitly enumerated finite groups, and the
//! essential-dimension formula for `p`-groups whose commutator subgroup is
//! central and cyclic:
//!
//! `ed G = sqrt(|G / C(G)|) + rank C(G) - 1`.

use std::collections::{HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

/// A finite group given by its element list and multiplication.
pub trait FiniteGroup {
    type Elem: Clone + Eq + Hash + Debug;

    fn elements(&self) -> Vec<Self::Elem>;

    fn identity(&self) -> Self::Elem;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// A generating set; defaults to every element.
    fn generators(&self) -> Vec<Self::Elem> {
        self.elements()
    }
}

/// Structural data consumed by [`ed_formula`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupStructure {
    pub order: u64,
    /// `Some(p)` when the order is a power of the prime `p` (or the group is trivial, `p = 2`).
    pub prime: Option<u64>,
    pub center_order: u64,
    /// Minimal number of generators of the (abelian) center.
    pub center_rank: u32,
    pub commutator_order: u64,
    pub commutator_central: bool,
    pub commutator_cyclic: bool,
    pub exponent: u64,
}

fn prime_power_base(n: u64) -> Option<u64> {
    if n == 1 {
        return Some(2);
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

fn pow<G: FiniteGroup>(g: &G, x: &G::Elem, k: u64) -> G::Elem {
    (0..k).fold(g.identity(), |acc, _| g.mul(&acc, x))
}

fn element_order<G: FiniteGroup>(g: &G, x: &G::Elem) -> u64 {
    let e = g.identity();
    let mut y = x.clone();
    let mut k = 1;
    while y != e {
        y = g.mul(&y, x);
        k += 1;
    }
    k
}

fn inverse<G: FiniteGroup>(g: &G, x: &G::Elem) -> G::Elem {
    pow(g, x, element_order(g, x) - 1)
}

/// Subgroup generated by `seed`, closed under conjugation by `conj`.
fn normal_closure<G: FiniteGroup>(g: &G, seed: Vec<G::Elem>, conj: &[G::Elem]) -> HashSet<G::Elem> {
    let conj_inv: Vec<_> = conj.iter().map(|c| inverse(g, c)).collect();
    let mut set: HashSet<G::Elem> = HashSet::from([g.identity()]);
    let mut gens: Vec<G::Elem> = Vec::new();
    let mut queue: Vec<G::Elem> = seed;
    while let Some(x) = queue.pop() {
        if set.contains(&x) {
            continue;
        }
        gens.push(x.clone());
        // close the subgroup under the new generator
        let mut frontier: Vec<G::Elem> = set.iter().cloned().collect();
        while let Some(y) = frontier.pop() {
            for s in &gens {
                let z = g.mul(&y, s);
                if set.insert(z.clone()) {
                    frontier.push(z);
                }
            }
        }
        for (c, ci) in conj.iter().zip(&conj_inv) {
            let z = g.mul(&g.mul(c, &x), ci);
            if !set.contains(&z) {
                queue.push(z);
            }
        }
    }
    set
}

/// Compute center, commutator subgroup, exponent and center rank by enumeration.
///
/// The center is the set of elements commuting with every generator; the
/// commutator subgroup is the normal closure of commutators of generators.
pub fn analyze<G: FiniteGroup>(g: &G) -> GroupStructure {
    let elems = g.elements();
    let gens = g.generators();
    let center: Vec<G::Elem> =
        elems.iter().filter(|x| gens.iter().all(|s| g.mul(x, s) == g.mul(s, x))).cloned().collect();
    let inv: HashMap<G::Elem, G::Elem> = gens.iter().map(|s| (s.clone(), inverse(g, s))).collect();
    let mut comms = Vec::new();
    for s in &gens {
        for t in &gens {
            let c = g.mul(&g.mul(s, t), &g.mul(&inv[s], &inv[t]));
            comms.push(c);
        }
    }
    let commutator = normal_closure(g, comms, &gens);
    let center_set: HashSet<G::Elem> = center.iter().cloned().collect();
    let orders: Vec<u64> = elems.iter().map(|x| element_order(g, x)).collect();
    let exponent = orders.iter().fold(1u64, |acc, &o| num_integer::lcm(acc, o));
    let commutator_cyclic = commutator.iter().any(|x| element_order(g, x) == commutator.len() as u64);
    let order = elems.len() as u64;
    let prime = prime_power_base(order);
    let center_rank = match prime {
        Some(p) => {
            let e = g.identity();
            let socle = center.iter().filter(|z| pow(g, z, p) == e).count() as u64;
            let mut r = 0;
            let mut m = socle;
            while m > 1 {
                m /= p;
                r += 1;
            }
            r
        }
        None => 0,
    };
    GroupStructure {
        order,
        prime,
        center_order: center.len() as u64,
        center_rank,
        commutator_order: commutator.len() as u64,
        commutator_central: commutator.iter().all(|x| center_set.contains(x)),
        commutator_cyclic,
        exponent,
    }
}

/// `sqrt(|G/C(G)|) + rank C(G) - 1` for a `p`-group with central cyclic commutator subgroup.
pub fn ed_formula(s: &GroupStructure) -> Result<u64> {
    if s.prime.is_none() {
        return Err(Error::Precondition(format!("order {} is not a prime power", s.order)));
    }
    if !s.commutator_central {
        return Err(Error::Precondition("commutator subgroup is not central".into()));
    }
    if !s.commutator_cyclic {
        return Err(Error::Precondition("commutator subgroup is not cyclic".into()));
    }
    let index = s.order / s.center_order;
    let root = num_integer::Roots::sqrt(&index);
    if root * root != index {
        return Err(Error::Precondition(format!("|G/C(G)| = {index} is not a square")));
    }
    Ok(root + s.center_rank as u64 - 1)
}
