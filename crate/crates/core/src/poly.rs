//! Exact polynomial and matrix algebra over the integers and rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{ComplexInterval, Interval};

/// Integer polynomial with coefficients in ascending degree order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let p = x.prec();
        let mut acc = Interval::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Interval::from_int(c.clone(), p);
        }
        acc
    }

    pub fn eval_complex(&self, z: &ComplexInterval) -> ComplexInterval {
        let p = z.prec();
        let mut acc = ComplexInterval::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + &ComplexInterval::real(Interval::from_int(c.clone(), p));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Exact quotient `self / d` if it exists in `Z[x]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.to_rat().div_rem(&d.to_rat());
        if !r.is_zero() {
            return None;
        }
        q.to_int()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Rational polynomial with coefficients in ascending degree order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn lc(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let dlc = d.lc();
        if self.is_zero() || self.degree() < dd {
            return (RatPoly::new(Vec::new()), self.clone());
        }
        let mut q = vec![BigRational::zero(); self.degree() - dd + 1];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &dlc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (RatPoly::new(q), RatPoly::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc();
        RatPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// The integer polynomial, if every coefficient is an integer.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }

    /// Clear denominators and content: the primitive integer polynomial with positive
    /// leading coefficient that is a rational multiple of `self`.
    pub fn primitive_integer(&self) -> IntPoly {
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        IntPoly::new(ints).primitive()
    }
}

/// Squarefree over the rationals: `gcd(p, p')` is constant.
pub fn is_squarefree(p: &IntPoly) -> bool {
    let r = p.to_rat();
    r.gcd(&r.derivative()).degree() == 0
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = num_integer::Roots::sqrt(n);
    &r * &r == *n
}

/// Dense square matrix over the rationals; only what companion-matrix algebra needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    a: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        RatMatrix { n, a: vec![BigRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = BigRational::one();
        }
        m
    }

    /// Companion matrix of a monic polynomial; its characteristic polynomial is `p`.
    pub fn companion(p: &IntPoly) -> Self {
        assert!(p.is_monic(), "companion matrix needs a monic polynomial");
        let n = p.degree();
        let mut m = Self::zeros(n);
        for i in 1..n {
            m.a[i * n + (i - 1)] = BigRational::one();
        }
        for i in 0..n {
            m.a[i * n + (n - 1)] = BigRational::from_integer(-p.coeff(i));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.a[i * self.n + j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = &self.a[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += x * &o.a[k * n + j];
                }
            }
        }
        out
    }

    pub fn add_scaled_identity(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.a[i * self.n + i] += c;
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::identity(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &IntPoly) -> Self {
        let mut acc = Self::zeros(self.n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add_scaled_identity(&BigRational::from_integer(c.clone()));
        }
        acc
    }

    pub fn trace(&self) -> BigRational {
        (0..self.n).fold(BigRational::zero(), |acc, i| acc + &self.a[i * self.n + i])
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut m = self.a.clone();
        let mut inv = Self::identity(n).a;
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r * n + col].is_zero())?;
            if piv != col {
                for j in 0..n {
                    m.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let p = m[col * n + col].clone();
            for j in 0..n {
                m[col * n + j] /= &p;
                inv[col * n + j] /= &p;
            }
            for r in 0..n {
                if r == col || m[r * n + col].is_zero() {
                    continue;
                }
                let f = m[r * n + col].clone();
                for j in 0..n {
                    let (mv, iv) = (m[col * n + j].clone(), inv[col * n + j].clone());
                    m[r * n + j] -= &f * mv;
                    inv[r * n + j] -= &f * iv;
                }
            }
        }
        Some(RatMatrix { n, a: inv })
    }

    /// Monic characteristic polynomial (Faddeev-LeVerrier).
    pub fn charpoly(&self) -> RatPoly {
        let n = self.n;
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = BigRational::one();
        let mut m = Self::zeros(n);
        for k in 1..=n {
            m = self.mul(&m).add_scaled_identity(&c[n - k + 1]);
            let am = self.mul(&m);
            c[n - k] = -am.trace() / BigRational::from_integer(BigInt::from(k));
        }
        RatPoly::new(c)
    }
}
