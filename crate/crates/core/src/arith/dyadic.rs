//! Exact dyadic rationals `mant * 2^exp` with directed rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for operations that must shorten a mantissa.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// A dyadic rational `mant * 2^exp`, kept normalized (odd mantissa, or zero with exponent 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Self::new(v.into(), 0)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite f64 has no dyadic value");
        if v == 0.0 {
            return Self::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1i64 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & 0x000f_ffff_ffff_ffff;
        let (m, e) = if raw_exp == 0 {
            (frac as i64, -1074)
        } else {
            ((frac | (1u64 << 52)) as i64, raw_exp - 1075)
        };
        Self::new(BigInt::from(sign * m), e)
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz as usize;
            self.exp += tz as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Position of the most significant bit: `2^msb <= |x| < 2^(msb+1)`. `None` for zero.
    pub fn msb(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64 - 1)
        }
    }

    /// Multiply by `2^k` exactly.
    pub fn ldexp(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        Self::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Round to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = (bits - prec as u64) as usize;
        let m = shift_floor(&self.mant, shift, dir);
        Self::new(m, self.exp + shift as i64)
    }

    /// `self / other` rounded to `prec` significant bits. Panics on a zero divisor.
    pub fn div_round(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        // Shift the numerator so the integer quotient carries at least prec + 2 bits.
        let need = prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64;
        let s = need.max(0) as usize;
        let num = &self.mant << s;
        let (q, r) = num.div_mod_floor(&other.mant);
        let q = if dir == Round::Up && !r.is_zero() { q + 1 } else { q };
        Self::new(q, self.exp - other.exp - s as i64).round(prec, dir)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            shift_floor(&self.mant, (-self.exp) as usize, Round::Down)
        }
    }

    pub fn ceil(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            shift_floor(&self.mant, (-self.exp) as usize, Round::Up)
        }
    }

    /// Nearest `f64` (may overflow to infinity for huge values).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 60 {
            let sh = bits - 60;
            ((&self.mant >> sh as usize), self.exp + sh as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let m = m.to_f64().unwrap_or(f64::NAN);
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        let mut v = m;
        let mut e = e;
        while e != 0 {
            let step = e.clamp(-900, 900);
            v *= 2f64.powi(step as i32);
            e -= step;
        }
        v
    }

    pub fn max_of(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min_of(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }
}

/// `floor(m / 2^shift)` or `ceil(m / 2^shift)`.
fn shift_floor(m: &BigInt, shift: usize, dir: Round) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    match dir {
        Round::Down => floor_shr(m, shift),
        Round::Up => -floor_shr(&-m, shift),
    }
}

fn floor_shr(m: &BigInt, shift: usize) -> BigInt {
    if m.is_negative() {
        let mag = m.magnitude();
        let q = mag >> shift;
        let exact = (&q << shift) == *mag;
        let q: BigInt = BigInt::from(q);
        if exact {
            -q
        } else {
            -(q + BigInt::one())
        }
    } else {
        m >> shift
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let e = self.exp.min(other.exp);
        // Compare magnitudes cheaply by msb first.
        let (ma, mb) = (self.msb().unwrap(), other.msb().unwrap());
        if ma != mb {
            let mag = ma.cmp(&mb);
            return if sa > 0 { mag } else { mag.reverse() };
        }
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::decimal::format_sig(self, 20))
    }
}
