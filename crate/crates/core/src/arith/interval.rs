//! Closed real intervals with dyadic endpoints and outward rounding.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::decimal::format_sig;
use super::dyadic::{Dyadic, Round};
use super::elementary::{exp_bracket, ln_bracket};

/// A certified real: the true value lies in `[lo, hi]`.
///
/// `prec` is the number of significant bits kept by every rounding step;
/// binary operations work at the larger of the two operand precisions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "inverted interval");
        Interval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn point(d: Dyadic, prec: u32) -> Self {
        Self::new(d.clone(), d, prec)
    }

    pub fn zero(prec: u32) -> Self {
        Self::point(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::point(Dyadic::one(), prec)
    }

    pub fn from_int<T: Into<BigInt>>(v: T, prec: u32) -> Self {
        Self::point(Dyadic::from_int(v), prec)
    }

    /// Enclosure of `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let n = Dyadic::from_int(num.clone());
        let d = Dyadic::from_int(den.clone());
        Interval {
            lo: n.div_round(&d, prec, Round::Down),
            hi: n.div_round(&d, prec, Round::Up),
            prec,
        }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Self::from_ratio(r.numer(), r.denom(), prec)
    }

    /// Enclosure of a finite `f64` (exact).
    pub fn from_f64(v: f64, prec: u32) -> Self {
        Self::point(Dyadic::from_f64(v), prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).ldexp(-1)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    /// Approximate width as `f64` (for reporting only).
    pub fn width_f64(&self) -> f64 {
        self.width().to_f64()
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_int(&self, n: &BigInt) -> bool {
        self.contains(&Dyadic::from_int(n.clone()))
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certified `self < other`.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    /// Certified `self > other`.
    pub fn certainly_gt(&self, other: &Self) -> bool {
        self.lo > other.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// `other` lies inside `self`.
    pub fn encloses(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.min_of(&other.lo),
            hi: self.hi.max_of(&other.hi),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn max(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.max_of(&other.lo),
            hi: self.hi.max_of(&other.hi),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn min(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.min_of(&other.lo),
            hi: self.hi.min_of(&other.hi),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            Interval {
                lo: Dyadic::zero(),
                hi: self.hi.max_of(&self.lo.neg()),
                prec: self.prec,
            }
        }
    }

    pub fn sqr(&self) -> Self {
        let a = self.abs();
        Interval {
            lo: a.lo.mul(&a.lo).round(self.prec, Round::Down),
            hi: a.hi.mul(&a.hi).round(self.prec, Round::Up),
            prec: self.prec,
        }
    }

    /// Enclosure of `1/self`, or `None` if the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        let one = Dyadic::one();
        Some(Interval {
            lo: one.div_round(&self.hi, self.prec, Round::Down),
            hi: one.div_round(&self.lo, self.prec, Round::Up),
            prec: self.prec,
        })
    }

    /// Enclosure of `self / other`, or `None` if `other` contains zero.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        let p = self.prec.max(other.prec);
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                let l = a.div_round(b, p, Round::Down);
                let h = a.div_round(b, p, Round::Up);
                lo = Some(match lo {
                    Some(x) => x.min_of(&l),
                    None => l,
                });
                hi = Some(match hi {
                    Some(x) => x.max_of(&h),
                    None => h,
                });
            }
        }
        Some(Interval { lo: lo.unwrap(), hi: hi.unwrap(), prec: p })
    }

    pub fn powi(&self, n: u64) -> Self {
        if n == 0 {
            return Self::one(self.prec);
        }
        if n % 2 == 0 {
            return self.sqr().powi(n / 2);
        }
        let mut result = self.clone();
        let mut base = self.sqr();
        let mut e = n / 2;
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

    /// Square root; requires `lo >= 0`.
    pub fn sqrt(&self) -> Self {
        assert!(!self.lo.is_negative(), "sqrt of negative interval");
        Interval {
            lo: sqrt_round(&self.lo, self.prec, Round::Down),
            hi: sqrt_round(&self.hi, self.prec, Round::Up),
            prec: self.prec,
        }
    }

    pub fn exp(&self) -> Self {
        let (lo, _) = exp_bracket(&self.lo, self.prec);
        let (_, hi) = exp_bracket(&self.hi, self.prec);
        Interval { lo, hi, prec: self.prec }
    }

    /// Natural log; `None` unless the interval is strictly positive.
    pub fn ln(&self) -> Option<Self> {
        if !self.is_positive() {
            return None;
        }
        let (lo, _) = ln_bracket(&self.lo, self.prec);
        let (_, hi) = ln_bracket(&self.hi, self.prec);
        Some(Interval { lo, hi, prec: self.prec })
    }

    /// `max(0, ln x)`, continuous and monotone, so straddling 1 only widens the result.
    pub fn log_star(&self) -> Option<Self> {
        let l = self.ln()?;
        Some(l.max(&Self::zero(self.prec)))
    }

    /// `self^y` for a strictly positive base.
    pub fn pow(&self, y: &Self) -> Option<Self> {
        Some((&self.ln()? * y).exp())
    }

    /// Smallest integer `>= hi`.
    pub fn ceil_hi(&self) -> BigInt {
        self.hi.ceil()
    }

    /// Largest integer `<= hi`.
    pub fn floor_hi(&self) -> BigInt {
        self.hi.floor()
    }

    pub fn floor_lo(&self) -> BigInt {
        self.lo.floor()
    }

    /// Midpoint rendered with `sig` significant digits.
    pub fn format(&self, sig: usize) -> String {
        format_sig(&self.mid(), sig)
    }
}

fn sqrt_round(x: &Dyadic, prec: u32, dir: Round) -> Dyadic {
    if x.is_zero() {
        return Dyadic::zero();
    }
    // x = m * 2^e; scale to an even exponent with 2*prec + 4 mantissa bits.
    let m = x.mantissa();
    let mut e = x.exponent();
    let mut shift = (2 * prec as i64 + 4 - m.bits() as i64).max(0);
    if (e - shift) % 2 != 0 {
        shift += 1;
    }
    e -= shift;
    let n = m << shift as usize;
    let r = num_integer::Roots::sqrt(&n);
    let r = if dir == Round::Up && &r * &r != n { r + 1 } else { r };
    Dyadic::new(r, e / 2).round(prec, dir)
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        let p = self.prec.max(o.prec);
        Interval {
            lo: self.lo.add(&o.lo).round(p, Round::Down),
            hi: self.hi.add(&o.hi).round(p, Round::Up),
            prec: p,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        let p = self.prec.max(o.prec);
        Interval {
            lo: self.lo.sub(&o.hi).round(p, Round::Down),
            hi: self.hi.sub(&o.lo).round(p, Round::Up),
            prec: p,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let p = self.prec.max(o.prec);
        let prods = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = prods.iter().min().unwrap().round(p, Round::Down);
        let hi = prods.iter().max().unwrap().round(p, Round::Up);
        Interval { lo, hi, prec: p }
    }
}

impl Div for &Interval {
    type Output = Interval;
    fn div(self, o: &Interval) -> Interval {
        self.checked_div(o).expect("interval division by an interval containing zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Interval> for Interval {
            type Output = Interval;
            fn $m(self, o: Interval) -> Interval {
                (&self).$m(&o)
            }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, o: &Interval) -> Interval {
                (&self).$m(o)
            }
        }
        impl $tr<Interval> for &Interval {
            type Output = Interval;
            fn $m(self, o: Interval) -> Interval {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_sig(&self.lo, 12), format_sig(&self.hi, 12))
    }
}
