//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::time::Duration;

use wittforge::{Fp, FpForm, Sign};

/// `(a, b)_p` for squarefree integers by searching for a primitive solution of
/// `a x^2 + b y^2 = z^2` modulo `p^2` (odd `p`) or `2^5`.
pub fn hilbert_oracle(a: i64, b: i64, p: i64) -> Sign {
    let m = if p == 2 { 32 } else { p * p };
    let (a, b) = (a.rem_euclid(m), b.rem_euclid(m));
    let sq: Vec<i64> = (0..m).map(|x| x * x % m).collect();
    for x in 0..m {
        for y in 0..m {
            let lhs = (a * sq[x as usize] + b * sq[y as usize]) % m;
            for z in 0..m {
                if (x % p != 0 || y % p != 0 || z % p != 0) && sq[z as usize] == lhs {
                    return Sign::Plus;
                }
            }
        }
    }
    Sign::Minus
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && (2..=n.abs()).take_while(|d| d * d <= n.abs()).all(|d| n % (d * d) != 0)
}

/// Hyperbolicity of an even-dimensional form over F_p by counting its zeros:
/// a `2m`-dimensional form is hyperbolic iff it has `p^{2m-1} + p^m - p^{m-1}` zeros.
pub fn fp_hyperbolic_by_count(q: &FpForm) -> bool {
    let n = q.dim();
    if n % 2 == 1 {
        return false;
    }
    if n == 0 {
        return true;
    }
    let p = q.coeffs()[0].modulus();
    let a: Vec<u64> = q.coeffs().iter().map(Fp::residue).collect();
    // distribution of values of a_i x^2 over x, then convolve
    let mut dist = vec![1u64; 1];
    dist.resize(p as usize, 0);
    for &ai in &a {
        let mut next = vec![0u64; p as usize];
        for (v, &c) in dist.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for x in 0..p {
                next[((v as u64 + ai * x % p * x) % p) as usize] += c;
            }
        }
        dist = next;
    }
    let m = (n / 2) as u32;
    dist[0] == p.pow(2 * m - 1) + p.pow(m) - p.pow(m - 1)
}

/// Product of two signed words `e_{i_1} ... e_{i_k}` by rewriting with
/// `e_i e_i = -1` and `e_i e_j = -e_j e_i`; returns the sign and sorted indices.
pub fn clifford_word_product(sx: Sign, x: &[u32], sy: Sign, y: &[u32]) -> (Sign, Vec<u32>) {
    let mut w: Vec<u32> = x.iter().chain(y).copied().collect();
    let mut sign = sx * sy;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < w.len() {
            if w[i] == w[i + 1] {
                w.drain(i..i + 2);
                sign = -sign;
                changed = true;
            } else if w[i] > w[i + 1] {
                w.swap(i, i + 1);
                sign = -sign;
                changed = true;
                i += 1;
            } else {
                i += 1;
            }
        }
        if !changed {
            return (sign, w);
        }
    }
}

/// Closed form of `ed(G_n)`.
pub fn ed_closed_form(n: u32) -> u64 {
    match n % 4 {
        0 => (1 << ((n - 2) / 2)) + 1,
        2 => 1 << ((n - 2) / 2),
        _ => 1 << ((n - 1) / 2),
    }
}

/// One line per acceptance criterion.
pub fn verdict(id: u32, title: &str, ok: bool, elapsed: Duration, budget: Duration, detail: &str) -> bool {
    let in_time = elapsed <= budget;
    let status = if ok && in_time { "PASS" } else { "FAIL" };
    println!(
        "ACCEPTANCE {id} {status}: {title} [{:.2}s of {:.0}s budget] {detail}",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    ok && in_time
}
