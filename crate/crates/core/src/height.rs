//! Absolute logarithmic heights.
//!
//! For `eta` of degree `n` with primitive minimal polynomial `q0 * prod (x - eta_i)`,
//! `h(eta) = (log q0 + sum log_* |eta_i|) / n`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{ComplexInterval, Dyadic, Interval};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::roots::{isolate_roots, minimal_factor, RootEnclosure, DEFAULT_PRECISION_CEILING};

/// `max(0, log x)` for a certified positive `x`.
pub fn log_star(x: &Interval) -> Result<Interval> {
    x.log_star()
        .ok_or_else(|| Error::Domain(format!("log_* needs a positive argument, got {x}")))
}

/// `h(p/q) = log max(|p|, q)` for a reduced fraction.
pub fn height_of_rational(p: &BigInt, q: &BigInt, prec: u32) -> Result<Interval> {
    if p.is_zero() {
        return Err(Error::Domain("height of zero is not defined here".into()));
    }
    if !q.is_positive() {
        return Err(Error::Domain("denominator must be positive".into()));
    }
    if !p.gcd(q).is_one() {
        return Err(Error::Domain(format!("{p}/{q} is not in lowest terms")));
    }
    let m = p.abs().max(q.clone());
    Ok(Interval::from_int(m, prec).ln().expect("max(|p|, q) >= 1"))
}

/// `(log |lc| + sum log_* |conj|) / n` from the conjugate moduli of a primitive polynomial.
pub fn height_from_conjugates(lc: &BigInt, moduli: &[Interval], prec: u32) -> Result<Interval> {
    let mut acc = Interval::from_int(lc.abs(), prec)
        .ln()
        .ok_or_else(|| Error::Domain("zero leading coefficient".into()))?;
    for m in moduli {
        acc = &acc + &log_star(m)?;
    }
    Ok(&acc / &Interval::from_int(moduli.len() as i64, prec))
}

/// An algebraic number given by its minimal polynomial and one isolated conjugate.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    min_poly: IntPoly,
    roots: Vec<RootEnclosure>,
    chosen: usize,
}

impl AlgebraicNumber {
    /// Normalizes `p` to be primitive with positive leading coefficient and selects the
    /// conjugate closest to `approx`. Irreducibility is certified for degree up to 12.
    pub fn new(p: &IntPoly, approx: Complex64, prec: u32) -> Result<Self> {
        if p.degree() == 0 {
            return Err(Error::Domain("constant polynomial has no roots".into()));
        }
        let mut g = p.primitive();
        if g.lc().is_negative() {
            g = IntPoly::new(g.coeffs().iter().map(|c| -c).collect());
        }
        let roots = isolate_roots(&g, prec, DEFAULT_PRECISION_CEILING.max(prec))?;
        let chosen = roots
            .iter()
            .enumerate()
            .min_by(|a, b| {
                let da = (a.1.approx() - approx).norm();
                let db = (b.1.approx() - approx).norm();
                da.total_cmp(&db)
            })
            .map(|(i, _)| i)
            .expect("degree >= 1");
        match minimal_factor(&g, &roots, chosen) {
            Some((f, _)) if f.degree() == g.degree() => {}
            Some(_) => return Err(Error::Domain(format!("{g} is reducible"))),
            None => {
                return Err(Error::Domain(format!("cannot certify that {g} is irreducible")))
            }
        }
        Ok(AlgebraicNumber { min_poly: g, roots, chosen })
    }

    pub fn rational(r: &BigRational, prec: u32) -> Result<Self> {
        let p = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
        let approx = Complex64::new(Interval::from_rational(r, 64).to_f64(), 0.0);
        Self::new(&p, approx, prec)
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree()
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.min_poly
    }

    pub fn value(&self) -> ComplexInterval {
        self.roots[self.chosen].to_complex()
    }

    pub fn conjugates(&self) -> &[RootEnclosure] {
        &self.roots
    }
}

pub fn abs_log_height(eta: &AlgebraicNumber, prec: u32) -> Result<Interval> {
    let moduli: Vec<Interval> = eta.roots.iter().map(|r| r.modulus().with_prec(prec)).collect();
    height_from_conjugates(&eta.min_poly.lc(), &moduli, prec)
}

/// `a + b sqrt(d)` with rational `a, b` and a fixed squarefree `d` (not 0 or 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticElement {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

impl QuadraticElement {
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Self {
        assert!(!d.is_zero() && !d.is_one(), "d must be squarefree and not 0 or 1");
        QuadraticElement { a, b, d }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.d, o.d);
        Self::new(&self.a + &o.a, &self.b + &o.b, self.d.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.d, o.d);
        let d = BigRational::from_integer(self.d.clone());
        Self::new(
            &self.a * &o.a + &self.b * &o.b * &d,
            &self.a * &o.b + &self.b * &o.a,
            self.d.clone(),
        )
    }

    /// `self^e` for `e >= 0`; negative powers go through the conjugate.
    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::new(BigRational::one(), BigRational::zero(), self.d.clone());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let norm = self.norm();
        Self::new(&self.a / &norm, -&self.b / &norm, self.d.clone())
    }

    /// Field norm `a^2 - b^2 d`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone())
    }

    /// Primitive integer minimal polynomial (degree 1 when `b = 0`).
    pub fn min_poly(&self) -> IntPoly {
        let coeffs = if self.b.is_zero() {
            vec![-self.a.clone(), BigRational::one()]
        } else {
            vec![self.norm(), -(&self.a + &self.a), BigRational::one()]
        };
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> =
            coeffs.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
        IntPoly::new(ints).primitive()
    }

    /// Both conjugates as complex enclosures.
    pub fn conjugates(&self, prec: u32) -> Vec<ComplexInterval> {
        let a = Interval::from_rational(&self.a, prec);
        if self.b.is_zero() {
            return vec![ComplexInterval::real(a)];
        }
        let b = Interval::from_rational(&self.b, prec);
        let root = Interval::from_int(self.d.abs(), prec).sqrt();
        let t = &b * &root;
        if self.d.is_positive() {
            vec![ComplexInterval::real(&a + &t), ComplexInterval::real(&a - &t)]
        } else {
            vec![ComplexInterval::new(a.clone(), t.clone()), ComplexInterval::new(a, -&t)]
        }
    }

    /// `h(self)`; zero has height 0 by convention.
    pub fn height(&self, prec: u32) -> Result<Interval> {
        if self.is_zero() {
            return Ok(Interval::zero(prec));
        }
        let g = self.min_poly();
        let moduli: Vec<Interval> = self.conjugates(prec).iter().map(|c| c.abs()).collect();
        height_from_conjugates(&g.lc().abs(), &moduli, prec)
    }

    pub fn approx(&self) -> f64 {
        let c = &self.conjugates(64)[0];
        c.re.to_f64()
    }
}

/// True when `x` is at most `y` up to the enclosure widths plus `slack`.
pub fn le_with_slack(x: &Interval, y: &Interval, slack: &Dyadic) -> bool {
    x.lo() <= &y.hi().add(slack)
}
