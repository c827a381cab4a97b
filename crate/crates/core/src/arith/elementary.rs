//! Rigorous brackets for `exp` and `ln` at dyadic points.
//!
//! Every series is evaluated twice in fixed point, once with floors and once
//! with ceilings, so the two sums bracket the true value without any error
//! analysis beyond the explicit tail bounds below.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dyadic::{Dyadic, Round};

const GUARD_BITS: u32 = 40;

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Bracket `atanh(num/den) * 2^w` for `0 <= num/den <= 1/2`.
fn atanh_fixed(num: &BigInt, den: &BigInt, w: u32) -> (BigInt, BigInt) {
    debug_assert!(!num.is_negative() && den.is_positive());
    debug_assert!(num * 2 <= *den);
    if num.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let scale = BigInt::one() << w as usize;
    let num2 = num * num;
    let den2 = den * den;
    let mut p_lo = div_floor(&(&scale * num), den);
    let mut p_hi = div_ceil(&(&scale * num), den);
    let mut s_lo = p_lo.clone();
    let mut s_hi = p_hi.clone();
    let mut k: u64 = 1;
    loop {
        p_lo = div_floor(&(&p_lo * &num2), &den2);
        p_hi = div_ceil(&(&p_hi * &num2), &den2);
        let d = BigInt::from(2 * k + 1);
        s_lo += div_floor(&p_lo, &d);
        s_hi += div_ceil(&p_hi, &d);
        k += 1;
        if p_hi <= BigInt::one() {
            // Remaining terms sum to at most t^2/(1-t^2) * p <= p/3.
            s_hi += &p_hi;
            break;
        }
    }
    (s_lo, s_hi)
}

/// Bracket `ln 2 * 2^w`.
fn ln2_fixed(w: u32) -> (BigInt, BigInt) {
    let (lo, hi) = atanh_fixed(&BigInt::one(), &BigInt::from(3), w);
    (lo * 2, hi * 2)
}

fn fixed_to_dyadic(v: &BigInt, w: u32, prec: u32, dir: Round) -> Dyadic {
    Dyadic::new(v.clone(), -(w as i64)).round(prec, dir)
}

/// Bracket of `ln x` for dyadic `x > 0`, each end rounded to `prec` bits.
pub fn ln_bracket(x: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    assert!(x.is_positive(), "ln of non-positive value");
    let m = x.mantissa();
    let l = m.bits() as i64;
    // x = y * 2^k with y = m / 2^(l-1) in [1, 2)
    let k = x.exponent() + l - 1;
    let kbits = 64 - k.unsigned_abs().leading_zeros();
    let w = prec + GUARD_BITS + kbits;
    let half = BigInt::one() << (l - 1) as usize;
    let (a_lo, a_hi) = atanh_fixed(&(m - &half), &(m + &half), w);
    let (l2_lo, l2_hi) = ln2_fixed(w);
    let kb = BigInt::from(k);
    let (k_lo, k_hi) = if k >= 0 {
        (&kb * &l2_lo, &kb * &l2_hi)
    } else {
        (&kb * &l2_hi, &kb * &l2_lo)
    };
    let lo = a_lo * 2 + k_lo;
    let hi = a_hi * 2 + k_hi;
    (
        fixed_to_dyadic(&lo, w, prec, Round::Down),
        fixed_to_dyadic(&hi, w, prec, Round::Up),
    )
}

/// Bracket of `exp x` for dyadic `x`, each end rounded to `prec` bits.
pub fn exp_bracket(x: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    if x.is_zero() {
        return (Dyadic::one(), Dyadic::one());
    }
    if x.is_negative() {
        let (lo, hi) = exp_bracket(&x.neg(), prec + 4);
        let one = Dyadic::one();
        return (
            one.div_round(&hi, prec, Round::Down),
            one.div_round(&lo, prec, Round::Up),
        );
    }
    // Reduce to q = x / 2^j <= 2^-10, then square j times.
    let msb = x.msb().unwrap();
    let j = (msb + 11).max(0) as u32;
    let q = x.ldexp(-(j as i64));
    debug_assert!(q.exponent() < 0);
    let num = q.mantissa().clone();
    let den_shift = (-q.exponent()) as usize;
    let w = prec + GUARD_BITS + j;
    let scale = BigInt::one() << w as usize;
    let den = BigInt::one() << den_shift;
    let mut t_lo = scale.clone();
    let mut t_hi = scale.clone();
    let mut s_lo = scale.clone();
    let mut s_hi = scale;
    let mut i: u64 = 1;
    loop {
        let d = &den * BigInt::from(i);
        t_lo = div_floor(&(&t_lo * &num), &d);
        t_hi = div_ceil(&(&t_hi * &num), &d);
        s_lo += &t_lo;
        s_hi += &t_hi;
        i += 1;
        if t_hi <= BigInt::one() {
            // q <= 1/2 so the tail is at most the last term.
            s_hi += &t_hi;
            break;
        }
    }
    let mut lo = Dyadic::new(s_lo, -(w as i64)).round(w, Round::Down);
    let mut hi = Dyadic::new(s_hi, -(w as i64)).round(w, Round::Up);
    for _ in 0..j {
        lo = lo.mul(&lo).round(w, Round::Down);
        hi = hi.mul(&hi).round(w, Round::Up);
    }
    (lo.round(prec, Round::Down), hi.round(prec, Round::Up))
}
