//! Deterministic decimal rendering and parsing of exact values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::Dyadic;

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// Render `d` in scientific notation with exactly `sig` significant digits
/// (round half up on the truncated expansion), e.g. `1.61803e0`.
pub fn format_sig(d: &Dyadic, sig: usize) -> String {
    if d.is_zero() {
        return format!("0.{}e0", "0".repeat(sig.saturating_sub(1)));
    }
    let sig = sig.max(1);
    let neg = d.is_negative();
    let m = d.mantissa().abs();
    let e = d.exponent();
    let (num, den) = if e >= 0 {
        (m << e as usize, BigInt::one())
    } else {
        (m, BigInt::one() << (-e) as usize)
    };
    let msb = d.msb().unwrap();
    // floor(msb * log10 2) is within one of the decimal exponent.
    let mut k: i64 = sig as i64 + 2 - (msb as f64 * std::f64::consts::LOG10_2).floor() as i64;
    loop {
        let q = if k >= 0 {
            (&num * pow10(k as u32)).div_floor(&den)
        } else {
            num.div_floor(&(&den * pow10((-k) as u32)))
        };
        let digits = q.to_str_radix(10);
        if digits.len() < sig + 1 {
            k += (sig + 1 - digits.len()) as i64;
            continue;
        }
        let exp10 = digits.len() as i64 - 1 - k;
        let head: BigInt = digits[..sig].parse().unwrap();
        let next = digits.as_bytes()[sig] - b'0';
        let mut rounded = if next >= 5 { head + 1 } else { head };
        let mut exp10 = exp10;
        let mut s = rounded.to_str_radix(10);
        if s.len() > sig {
            rounded /= 10;
            s = rounded.to_str_radix(10);
            exp10 += 1;
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&s[..1]);
        if sig > 1 {
            out.push('.');
            out.push_str(&s[1..]);
        }
        out.push('e');
        out.push_str(&exp10.to_string());
        return out;
    }
}

/// Parse a decimal literal (`-12`, `3.5`, `1.25e-3`) to an exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    if neg {
        n = -n;
    }
    let scale = exp10 - frac_part.len() as i64;
    if scale.unsigned_abs() > 100_000 {
        return None;
    }
    Some(if scale >= 0 {
        BigRational::from_integer(n * pow10(scale as u32))
    } else {
        BigRational::new(n, pow10((-scale) as u32))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_simple_values() {
        assert_eq!(format_sig(&Dyadic::from_int(37800), 5), "3.7800e4");
        assert_eq!(format_sig(&Dyadic::new(BigInt::from(-3), -2), 3), "-7.50e-1");
        assert_eq!(format_sig(&Dyadic::zero(), 3), "0.00e0");
    }

    #[test]
    fn rounding_carries_into_exponent() {
        // 0.99999 to 3 digits
        let d = Dyadic::new(BigInt::from(1048565), -20);
        assert_eq!(format_sig(&d, 3), "1.00e0");
    }

    #[test]
    fn parses_scientific() {
        let r = parse_decimal("1.25e-3").unwrap();
        assert_eq!(r, BigRational::new(BigInt::from(1), BigInt::from(800)));
        assert_eq!(parse_decimal("-12").unwrap(), BigRational::from_integer(BigInt::from(-12)));
        assert!(parse_decimal("1.2.3").is_none());
        assert!(parse_decimal("abc").is_none());
    }
}
