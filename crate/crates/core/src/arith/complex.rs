//! Rectangular complex enclosures.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::dyadic::Dyadic;
use super::interval::Interval;

/// A certified complex number: real and imaginary parts each lie in their interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn real(re: Interval) -> Self {
        let p = re.prec();
        ComplexInterval { re, im: Interval::zero(p) }
    }

    pub fn point(re: Dyadic, im: Dyadic, prec: u32) -> Self {
        ComplexInterval { re: Interval::point(re, prec), im: Interval::point(im, prec) }
    }

    pub fn zero(prec: u32) -> Self {
        Self::real(Interval::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::real(Interval::one(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn conj(&self) -> Self {
        ComplexInterval { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Interval {
        &self.re.sqr() + &self.im.sqr()
    }

    /// Enclosure of the modulus.
    pub fn abs(&self) -> Interval {
        if self.im.lo().is_zero() && self.im.hi().is_zero() {
            return self.re.abs();
        }
        self.norm_sqr().sqrt()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains_point(&self, re: &Dyadic, im: &Dyadic) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    /// Larger of the two side lengths.
    pub fn width(&self) -> Dyadic {
        self.re.width().max_of(&self.im.width())
    }

    pub fn mid(&self) -> (Dyadic, Dyadic) {
        (self.re.mid(), self.im.mid())
    }

    pub fn scale(&self, k: &Interval) -> Self {
        ComplexInterval { re: &self.re * k, im: &self.im * k }
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm_sqr();
        let inv = n.recip()?;
        Some(ComplexInterval { re: &self.re * &inv, im: -(&self.im * &inv) })
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let n = other.norm_sqr();
        let inv = n.recip()?;
        let num = self * &other.conj();
        Some(num.scale(&inv))
    }

    pub fn sqr(&self) -> Self {
        let re = &self.re.sqr() - &self.im.sqr();
        let im = &(&self.re * &self.im) * &Interval::from_int(2, self.prec());
        ComplexInterval { re, im }
    }

    pub fn powi(&self, n: u64) -> Self {
        let mut result = Self::one(self.prec());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        result
    }
}

impl Add for &ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, o: &ComplexInterval) -> ComplexInterval {
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        ComplexInterval { re, im }
    }
}

impl Neg for &ComplexInterval {
    type Output = ComplexInterval;
    fn neg(self) -> ComplexInterval {
        ComplexInterval { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}
