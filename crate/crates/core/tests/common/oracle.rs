//! Brute-force reference for the solution set: plain nested loops, its own term generator
//! and its own factoring. Shares no code with the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn terms(coeffs: &[i64], initial: &[i64], count: usize) -> Vec<BigInt> {
    let d = coeffs.len();
    let mut u: Vec<BigInt> = initial.iter().map(|&x| BigInt::from(x)).collect();
    while u.len() < count {
        let n = u.len();
        let mut next = BigInt::zero();
        for i in 0..d {
            next += BigInt::from(coeffs[i]) * &u[n - 1 - i];
        }
        u.push(next);
    }
    u.truncate(count);
    u
}

fn exponents(value: &BigInt, w: i64, primes: &[u64]) -> Option<Vec<u64>> {
    let w = BigInt::from(w);
    if value.is_zero() || value.is_negative() != w.is_negative() {
        return None;
    }
    let (mut rest, r) = value.div_rem(&w);
    if !r.is_zero() {
        return None;
    }
    let mut z = Vec::new();
    for &p in primes {
        let p = BigInt::from(p);
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        z.push(e);
    }
    if rest.is_one() {
        Some(z)
    } else {
        None
    }
}

/// `(n, z)` pairs with `cap >= n_1 > ... > n_k >= 0`, in lexicographic order of `n`.
pub fn solve(
    coeffs: &[i64],
    initial: &[i64],
    lambdas: &[i64],
    w: i64,
    primes: &[u64],
    cap: usize,
) -> Vec<(Vec<usize>, Vec<u64>)> {
    let u = terms(coeffs, initial, cap + 1);
    let k = lambdas.len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    // odometer over all k-tuples in [0, cap]^k, keeping the strictly decreasing ones
    loop {
        if idx.windows(2).all(|p| p[0] > p[1]) {
            let mut lhs = BigInt::zero();
            for j in 0..k {
                lhs += BigInt::from(lambdas[j]) * &u[idx[j]];
            }
            if let Some(z) = exponents(&lhs, w, primes) {
                out.push((idx.clone(), z));
            }
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                out.sort();
                return out;
            }
            pos -= 1;
            if idx[pos] < cap {
                idx[pos] += 1;
                for later in idx.iter_mut().skip(pos + 1) {
                    *later = 0;
                }
                break;
            }
        }
    }
}
