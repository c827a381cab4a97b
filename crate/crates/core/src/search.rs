//! Exhaustive enumeration of solutions below a cap, and checking a report against them.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Interval;
use crate::error::{Error, Result};
use crate::instance::{factor_over_primes, Instance};
use crate::recurrence::SpectralData;
use crate::report::BoundReport;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Solution {
    pub n: Vec<usize>,
    pub z: Vec<u64>,
}

impl Solution {
    pub fn n1(&self) -> usize {
        self.n[0]
    }

    /// Exact re-evaluation of the equation.
    pub fn holds(&self, instance: &Instance) -> bool {
        if self.n.len() != instance.k() || self.z.len() != instance.s() {
            return false;
        }
        if self.n.windows(2).any(|p| p[0] <= p[1]) {
            return false;
        }
        let lhs: BigInt = self
            .n
            .iter()
            .zip(instance.lambdas())
            .map(|(&i, l)| l * instance.spec().term(i))
            .sum();
        let mut rhs = instance.w().clone();
        for (p, &e) in instance.primes().iter().zip(&self.z) {
            rhs *= num_traits::pow(p.clone(), e as usize);
        }
        lhs == rhs
    }

    pub fn to_line(&self) -> String {
        let j = |v: Vec<String>| v.join(",");
        format!(
            "n=({}) z=({})",
            j(self.n.iter().map(|x| x.to_string()).collect()),
            j(self.z.iter().map(|x| x.to_string()).collect())
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchMode {
    /// Every tuple is factored exactly.
    #[default]
    Exact,
    /// Tuples are first screened modulo auxiliary primes; survivors are factored exactly.
    Sieve,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub cap: usize,
    /// Solutions with `n_1 >= 3`, sorted.
    pub solutions: Vec<Solution>,
    /// Solutions with `n_1 < 3`, outside the theorem's range, sorted.
    pub flagged: Vec<Solution>,
}

impl SearchResult {
    pub fn all(&self) -> Vec<Solution> {
        let mut v: Vec<Solution> = self.flagged.iter().chain(&self.solutions).cloned().collect();
        v.sort();
        v
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.solutions {
            let _ = writeln!(out, "{}", s.to_line());
        }
        for s in &self.flagged {
            let _ = writeln!(out, "{} flagged: n1 < 3", s.to_line());
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializes")
    }
}

fn sort_key(a: &Solution, b: &Solution) -> std::cmp::Ordering {
    a.n.cmp(&b.n).then_with(|| a.z.cmp(&b.z))
}

/// Auxiliary moduli for the sieve: primes near 2^31 that avoid the instance's primes.
fn sieve_moduli(instance: &Instance) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = (1u64 << 31) - 1;
    while out.len() < 2 {
        if crate::instance::is_prime_u64(q) && !instance.primes().iter().any(|p| p == &BigInt::from(q)) {
            out.push(q);
        }
        q -= 2;
    }
    out
}

/// Residue screen modulo `q`: divided by `w`, a solution's value lies in the subgroup of
/// `(Z/q)^*` generated by the primes, which is enumerated once.
struct Sieve {
    q: u64,
    w_inv: u64,
    members: std::collections::HashSet<u64>,
}

fn powmod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % q as u128) as u64;
        }
        b = ((b as u128 * b as u128) % q as u128) as u64;
        e >>= 1;
    }
    acc
}

impl Sieve {
    /// `None` when the generated subgroup is too large to be a useful filter.
    fn new(q: u64, instance: &Instance) -> Option<Sieve> {
        let w = instance.w() % BigInt::from(q);
        let w = ((w + BigInt::from(q)) % BigInt::from(q)).to_u64()?;
        if w == 0 {
            return None;
        }
        let w_inv = powmod(w, q - 2, q);
        let gens: Vec<u64> = instance.primes().iter().map(|p| (p % BigInt::from(q)).to_u64().unwrap()).collect();
        let mut members = std::collections::HashSet::new();
        members.insert(1u64);
        let mut frontier = vec![1u64];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = ((x as u128 * g as u128) % q as u128) as u64;
                if members.insert(y) {
                    if members.len() > 1 << 20 {
                        return None;
                    }
                    frontier.push(y);
                }
            }
        }
        Some(Sieve { q, w_inv, members })
    }

    fn may_match(&self, value: &BigInt) -> bool {
        let r = value % BigInt::from(self.q);
        let r = ((r + BigInt::from(self.q)) % BigInt::from(self.q)).to_u64().unwrap();
        let t = ((r as u128 * self.w_inv as u128) % self.q as u128) as u64;
        self.members.contains(&t)
    }
}

/// Every solution with `n_1 <= cap`, sorted by `(n_1, ..., n_k)`. Parallel over `n_1`.
pub fn search(instance: &Instance, cap: usize, mode: SearchMode) -> SearchResult {
    let table = instance.u_table(cap);
    let sieves: Vec<Sieve> = match mode {
        SearchMode::Exact => Vec::new(),
        SearchMode::Sieve => sieve_moduli(instance).into_iter().filter_map(|q| Sieve::new(q, instance)).collect(),
    };
    let w = instance.w();
    let primes = instance.primes();
    let mut found: Vec<Solution> = (0..=cap)
        .into_par_iter()
        .flat_map_iter(|n1| {
            let mut local = Vec::new();
            instance.for_each_tuple(&table, n1, |n, lhs| {
                if lhs.is_zero() || lhs.sign() != w.sign() {
                    return;
                }
                if !sieves.iter().all(|s| s.may_match(lhs)) {
                    return;
                }
                if let Some(z) = factor_over_primes(lhs, w, primes).expect("w != 0") {
                    local.push(Solution { n: n.to_vec(), z });
                }
            });
            local
        })
        .collect();
    found.sort_by(sort_key);
    let (flagged, solutions) = found.into_iter().partition(|s| s.n1() < 3);
    SearchResult { cap, solutions, flagged }
}

/// Search with a dedicated thread pool; the result does not depend on `threads`.
pub fn search_with_threads(instance: &Instance, cap: usize, mode: SearchMode, threads: usize) -> Result<SearchResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    Ok(pool.install(|| search(instance, cap, mode)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub solution: Solution,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationOutcome {
    pub cap: usize,
    pub checked: usize,
    pub flagged: usize,
    pub violations: Vec<Violation>,
}

impl VerificationOutcome {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every solution below `cap` against the report's bounds, and the pointwise
/// `z_i < (2 log|alpha| / log p_i) n_1` for `n_1 > c_2`.
pub fn verify_report(
    instance: &Instance,
    spectral: &SpectralData,
    report: &BoundReport,
    result: &SearchResult,
) -> Result<VerificationOutcome> {
    let prec = spectral.precision;
    let n1_bound = report.n1_bound();
    let z_bounds = report.z_bounds();
    if z_bounds.len() != instance.s() {
        return Err(Error::InvalidInstance("report has the wrong number of z bounds".into()));
    }
    let c2: BigRational =
        report.upper("c2").ok_or_else(|| Error::InvalidInstance("report lacks c2".into()))?;
    let c2 = Interval::from_rational(&c2, prec);
    let two_log_alpha = &Interval::from_int(2, prec) * &spectral.alpha_abs.ln().expect("|alpha| > 1");
    let ratios: Vec<Interval> = instance
        .primes()
        .iter()
        .map(|p| two_log_alpha.checked_div(&Interval::from_int(p.clone(), prec).ln().unwrap()).unwrap())
        .collect();
    let mut violations = Vec::new();
    for s in &result.solutions {
        if !s.holds(instance) {
            violations.push(Violation { solution: s.clone(), reason: "does not satisfy the equation".into() });
            continue;
        }
        if BigInt::from(s.n1()) > n1_bound {
            violations.push(Violation { solution: s.clone(), reason: format!("n1 exceeds n1_bound = {n1_bound}") });
        }
        for (i, &z) in s.z.iter().enumerate() {
            if BigInt::from(z) > z_bounds[i] {
                violations.push(Violation {
                    solution: s.clone(),
                    reason: format!("z_{} exceeds its bound {}", i + 1, z_bounds[i]),
                });
            }
        }
        let n1 = Interval::from_int(s.n1() as u64, prec);
        if n1.certainly_gt(&c2) {
            for (i, &z) in s.z.iter().enumerate() {
                let limit = &ratios[i] * &n1;
                if !Interval::from_int(z, prec).certainly_lt(&limit) {
                    violations.push(Violation {
                        solution: s.clone(),
                        reason: format!("z_{} is not below (2 log|alpha| / log p) n1", i + 1),
                    });
                }
            }
        }
    }
    Ok(VerificationOutcome {
        cap: result.cap,
        checked: result.solutions.len(),
        flagged: result.flagged.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::RecurrenceSpec;

    fn fib(l: &[i64], w: i64, p: &[i64]) -> Instance {
        Instance::new(
            RecurrenceSpec::from_i64s(&[1, 1], &[0, 1]).unwrap(),
            l.iter().map(|&x| x.into()).collect(),
            w.into(),
            p.iter().map(|&x| x.into()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn fibonacci_powers_of_two() {
        let r = search(&fib(&[1], 1, &[2]), 20, SearchMode::Exact);
        let ns: Vec<usize> = r.all().iter().map(|s| s.n1()).collect();
        assert_eq!(ns, vec![1, 2, 3, 6]);
        assert_eq!(r.flagged.len(), 2);
    }

    #[test]
    fn known_members_and_lines() {
        let r = search(&fib(&[1, 1], 1, &[2]), 50, SearchMode::Exact);
        let all = r.all();
        for (n, z) in [(vec![2, 1], vec![1]), (vec![4, 2], vec![2]), (vec![5, 4], vec![3]), (vec![7, 4], vec![4])] {
            assert!(all.contains(&Solution { n, z }));
        }
        assert!(all.iter().all(|s| s.holds(&fib(&[1, 1], 1, &[2]))));
        assert_eq!(Solution { n: vec![5, 4], z: vec![3] }.to_line(), "n=(5,4) z=(3)");
    }

    #[test]
    fn sieve_agrees_with_exact() {
        for (l, w, p) in [(&[1i64, 1][..], 1i64, &[2i64][..]), (&[2, 1], 3, &[2, 5, 7]), (&[3, 1, 2], 1, &[2, 3])] {
            let i = fib(l, w, p);
            assert_eq!(search(&i, 60, SearchMode::Exact), search(&i, 60, SearchMode::Sieve));
        }
    }

    #[test]
    fn thread_count_does_not_matter() {
        let i = fib(&[3, 1, 2], 1, &[2, 3]);
        let a = search_with_threads(&i, 40, SearchMode::Exact, 1).unwrap();
        let b = search_with_threads(&i, 40, SearchMode::Exact, 4).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn small_cap_is_empty() {
        assert!(search(&fib(&[1, 1], 1, &[2]), 0, SearchMode::Exact).all().is_empty());
    }
}
