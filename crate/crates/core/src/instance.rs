//! One equation `lambda_1 U_{n_1} + ... + lambda_k U_{n_k} = w p_1^{z_1} ... p_s^{z_s}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::recurrence::RecurrenceSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    spec: RecurrenceSpec,
    lambdas: Vec<BigInt>,
    w: BigInt,
    primes: Vec<BigInt>,
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Instance {
    pub fn new(spec: RecurrenceSpec, lambdas: Vec<BigInt>, w: BigInt, primes: Vec<BigInt>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidInstance(m));
        if lambdas.is_empty() {
            return bad("at least one lambda is required".into());
        }
        if let Some(i) = lambdas.iter().position(|l| l.is_zero()) {
            return bad(format!("lambda_{} is zero", i + 1));
        }
        if w.is_zero() {
            return bad("w must be nonzero".into());
        }
        if primes.is_empty() {
            return bad("at least one prime is required".into());
        }
        for (i, p) in primes.iter().enumerate() {
            let Some(pv) = p.to_u64() else {
                return bad(format!("p_{} = {p} is not a prime that can be certified (must be below 2^64)", i + 1));
            };
            if !is_prime_u64(pv) {
                return bad(format!("p_{} = {p} is not prime", i + 1));
            }
            if primes[..i].contains(p) {
                return bad(format!("p_{} = {p} is repeated", i + 1));
            }
            if w.is_multiple_of(p) {
                return bad(format!("p_{} = {p} divides w = {w}", i + 1));
            }
        }
        Ok(Instance { spec, lambdas, w, primes })
    }

    pub fn spec(&self) -> &RecurrenceSpec {
        &self.spec
    }

    pub fn lambdas(&self) -> &[BigInt] {
        &self.lambdas
    }

    pub fn w(&self) -> &BigInt {
        &self.w
    }

    pub fn primes(&self) -> &[BigInt] {
        &self.primes
    }

    pub fn k(&self) -> usize {
        self.lambdas.len()
    }

    pub fn s(&self) -> usize {
        self.primes.len()
    }

    pub fn lambda_max(&self) -> BigInt {
        self.lambdas.iter().map(|l| l.abs()).max().expect("k >= 1")
    }

    pub fn lambda_abs_sum(&self) -> BigInt {
        self.lambdas.iter().map(|l| l.abs()).sum()
    }

    /// `U_0, ..., U_cap`.
    pub fn u_table(&self, cap: usize) -> Vec<BigInt> {
        self.spec.terms(cap + 1)
    }

    /// `sum_j lambda_j U_{n_j}` from a precomputed table.
    pub fn eval_lhs(&self, table: &[BigInt], n: &[usize]) -> BigInt {
        assert_eq!(n.len(), self.k(), "tuple length must equal k");
        n.iter().zip(&self.lambdas).fold(BigInt::zero(), |acc, (&i, l)| acc + l * &table[i])
    }

    /// Calls `f(tuple, lhs)` for every `n_1 > n_2 > ... > n_k >= 0` with the given `n_1`.
    pub fn for_each_tuple<F: FnMut(&[usize], &BigInt)>(&self, table: &[BigInt], n1: usize, mut f: F) {
        let k = self.k();
        if n1 + 1 < k {
            return;
        }
        let mut tuple = vec![0usize; k];
        tuple[0] = n1;
        let first = &self.lambdas[0] * &table[n1];
        self.descend(table, &mut tuple, 1, &first, &mut f);
    }

    fn descend<F: FnMut(&[usize], &BigInt)>(
        &self,
        table: &[BigInt],
        tuple: &mut Vec<usize>,
        pos: usize,
        partial: &BigInt,
        f: &mut F,
    ) {
        let k = self.k();
        if pos == k {
            f(tuple, partial);
            return;
        }
        // leave room for the remaining k - pos - 1 smaller indices
        let lowest = k - pos - 1;
        for n in (lowest..tuple[pos - 1]).rev() {
            tuple[pos] = n;
            let next = partial + &self.lambdas[pos] * &table[n];
            self.descend(table, tuple, pos + 1, &next, f);
        }
    }

    pub fn with_w(&self, w: BigInt) -> Result<Self> {
        Instance::new(self.spec.clone(), self.lambdas.clone(), w, self.primes.clone())
    }
}

/// Sign of `lhs` matches `w` and `lhs / w` is a product of the given primes.
pub fn factor_over_primes(value: &BigInt, w: &BigInt, primes: &[BigInt]) -> Result<Option<Vec<u64>>> {
    if w.is_zero() {
        return Err(Error::Domain("w must be nonzero".into()));
    }
    if value.is_zero() || value.signum() != w.signum() {
        return Ok(None);
    }
    let (mut q, r) = value.div_rem(w);
    if !r.is_zero() {
        return Ok(None);
    }
    let mut z = Vec::with_capacity(primes.len());
    for p in primes {
        let mut e = 0u64;
        loop {
            let (qq, rr) = q.div_rem(p);
            if !rr.is_zero() {
                break;
            }
            q = qq;
            e += 1;
        }
        z.push(e);
    }
    Ok(q.is_one().then_some(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib() -> RecurrenceSpec {
        RecurrenceSpec::from_i64s(&[1, 1], &[0, 1]).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn validation() {
        let ok = Instance::new(fib(), ints(&[1, 1]), 1.into(), ints(&[2]));
        assert!(ok.is_ok());
        assert!(Instance::new(fib(), ints(&[1, 0]), 1.into(), ints(&[2])).is_err());
        assert!(Instance::new(fib(), ints(&[1]), 0.into(), ints(&[2])).is_err());
        assert!(Instance::new(fib(), ints(&[1]), 1.into(), ints(&[4])).is_err());
        assert!(Instance::new(fib(), ints(&[1]), 1.into(), ints(&[2, 2])).is_err());
        assert!(Instance::new(fib(), ints(&[1]), 6.into(), ints(&[3])).is_err());
        assert!(Instance::new(fib(), ints(&[1]), 1.into(), vec![]).is_err());
    }

    #[test]
    fn lhs_values() {
        let inst = Instance::new(fib(), ints(&[1, 1]), 1.into(), ints(&[2])).unwrap();
        let t = inst.u_table(20);
        assert_eq!(inst.eval_lhs(&t, &[5, 4]), BigInt::from(8));
        assert_eq!(inst.eval_lhs(&t, &[1, 0]), BigInt::from(1));
        let m = Instance::new(fib(), ints(&[1, -1]), 1.into(), ints(&[2])).unwrap();
        assert_eq!(m.eval_lhs(&t, &[9, 8]), BigInt::from(34 - 21));
    }

    #[test]
    fn tuple_enumeration_counts() {
        let inst = Instance::new(fib(), ints(&[3, 1, 2]), 1.into(), ints(&[2])).unwrap();
        let t = inst.u_table(12);
        for n1 in 0..=12usize {
            let mut count = 0;
            inst.for_each_tuple(&t, n1, |n, lhs| {
                assert!(n.windows(2).all(|p| p[0] > p[1]));
                assert_eq!(*lhs, inst.eval_lhs(&t, n));
                count += 1;
            });
            let expect = if n1 >= 2 { n1 * (n1 - 1) / 2 } else { 0 };
            assert_eq!(count, expect);
        }
    }

    #[test]
    fn factoring() {
        let p = ints(&[2]);
        assert_eq!(factor_over_primes(&8.into(), &1.into(), &p).unwrap(), Some(vec![3]));
        assert_eq!(factor_over_primes(&12.into(), &3.into(), &p).unwrap(), Some(vec![2]));
        assert_eq!(factor_over_primes(&10.into(), &1.into(), &p).unwrap(), None);
        assert_eq!(factor_over_primes(&(-8).into(), &1.into(), &p).unwrap(), None);
        assert_eq!(factor_over_primes(&(-8).into(), &(-1).into(), &p).unwrap(), Some(vec![3]));
        assert_eq!(factor_over_primes(&1.into(), &1.into(), &p).unwrap(), Some(vec![0]));
        assert!(factor_over_primes(&1.into(), &0.into(), &p).is_err());
        let q = ints(&[2, 5, 7]);
        assert_eq!(factor_over_primes(&(3 * 4 * 125 * 7).into(), &3.into(), &q).unwrap(), Some(vec![2, 3, 1]));
    }
}
