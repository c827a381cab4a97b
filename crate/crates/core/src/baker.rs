//! Linear forms in logarithms (Matveev, in the Bugeaud-Mignotte-Siksek form), the
//! Pethő-de Weger lemma, and the height bounds for the linear-form coefficient `gamma_m`.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith::Interval;
use crate::error::{Error, Result};

/// `0.16`, the floor in every Matveev height parameter.
pub fn matveev_floor(prec: u32) -> Interval {
    Interval::from_ratio(&16.into(), &100.into(), prec)
}

fn ln(x: &Interval, what: &str) -> Result<Interval> {
    x.ln().ok_or_else(|| Error::Domain(format!("log of non-positive {what}: {x}")))
}

/// `x^{n/2}` for `x > 0`.
fn half_power(x: &Interval, twice: u64) -> Interval {
    let whole = x.powi(twice / 2);
    if twice % 2 == 1 {
        &whole * &x.sqrt()
    } else {
        whole
    }
}

fn onepointfour(prec: u32) -> Interval {
    Interval::from_ratio(&7.into(), &5.into(), prec)
}

#[derive(Clone, Debug)]
pub struct MatveevInput {
    /// Degree of a number field containing all `gamma_i`.
    pub d: u64,
    pub a: Vec<Interval>,
    /// `B >= max |b_i|`.
    pub b: Interval,
}

impl MatveevInput {
    pub fn t(&self) -> usize {
        self.a.len()
    }

    fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::Domain("D must be at least 1".into()));
        }
        if self.a.is_empty() {
            return Err(Error::Domain("need at least one logarithm".into()));
        }
        let prec = self.b.prec();
        let floor = matveev_floor(prec);
        for (i, a) in self.a.iter().enumerate() {
            if a.certainly_lt(&floor) {
                return Err(Error::Domain(format!("A_{} = {a} is below 0.16", i + 1)));
            }
        }
        if self.b.certainly_lt(&Interval::one(prec)) {
            return Err(Error::Domain(format!("B = {} is below 1", self.b)));
        }
        Ok(())
    }
}

/// `-1.4 * 30^{t+3} t^{4.5} D^2 (1 + log D)(1 + log B) A_1 ... A_t`.
pub fn matveev_log_lower_bound(input: &MatveevInput) -> Result<Interval> {
    input.validate()?;
    let prec = input.b.prec();
    let t = input.t() as u64;
    let d = Interval::from_int(input.d, prec);
    let one = Interval::one(prec);
    let mut acc = &onepointfour(prec) * &Interval::from_int(30, prec).powi(t + 3);
    acc = &acc * &half_power(&Interval::from_int(t, prec), 9);
    acc = &acc * &d.sqr();
    acc = &acc * &(&one + &ln(&d, "D")?);
    acc = &acc * &(&one + &ln(&input.b, "B")?);
    for a in &input.a {
        acc = &acc * a;
    }
    Ok(-acc)
}

/// `C_M(x) = 1.4 * 30^{x+2} x^{4.5} D^{x+2} (1 + log D)`.
pub fn c_matveev(x: u64, d: u64, prec: u32) -> Result<Interval> {
    if x == 0 || d == 0 {
        return Err(Error::Domain("C_M needs x >= 1 and D >= 1".into()));
    }
    let di = Interval::from_int(d, prec);
    let mut acc = &onepointfour(prec) * &Interval::from_int(30, prec).powi(x + 2);
    acc = &acc * &half_power(&Interval::from_int(x, prec), 9);
    acc = &acc * &di.powi(x + 2);
    Ok(&acc * &(&Interval::one(prec) + &ln(&di, "D")?))
}

/// The coefficient Matveev's theorem actually gives for `t = s + 2` logarithms with
/// `A_{1,i} = D log p_i`, once `prod log p_i`, `A_2`, `A_3` and `(1 + log B)` are factored out:
/// `1.4 * 30^{s+5} (s+2)^{4.5} D^{s+2} (1 + log D)`.
pub fn matveev_coefficient_inline(s: u64, d: u64, prec: u32) -> Result<Interval> {
    let t = s + 2;
    let di = Interval::from_int(d, prec);
    let mut acc = &onepointfour(prec) * &Interval::from_int(30, prec).powi(t + 3);
    acc = &acc * &half_power(&Interval::from_int(t, prec), 9);
    acc = &acc * &di.powi(t);
    Ok(&acc * &(&Interval::one(prec) + &ln(&di, "D")?))
}

/// `x^{1/h}` for an interval with `lo >= 0`, endpoint by endpoint.
fn nth_root(x: &Interval, h: u32) -> Interval {
    let p = x.prec();
    let hi_pt = Interval::point(x.hi().clone(), p);
    let inv_h = Interval::from_ratio(&1.into(), &h.into(), p);
    let root = |v: &Interval| -> Interval {
        if v.hi().is_zero() {
            Interval::zero(p)
        } else {
            v.pow(&inv_h).expect("positive")
        }
    };
    let top = root(&hi_pt);
    let bottom = if x.lo().is_positive() {
        root(&Interval::point(x.lo().clone(), p))
    } else {
        Interval::zero(p)
    };
    Interval::new(bottom.lo().clone(), top.hi().clone(), p)
}

/// Upper bound for the largest solution of `x = u + v (log x)^h`:
/// `max{2^h (u^{1/h} + v^{1/h} log(h^h v))^h, 2^h (u^{1/h} + 2e^2)^h}`.
///
/// With `v = 0` only the second branch is used.
pub fn petho_deweger_bound(u: &Interval, v: &Interval, h: u32) -> Result<Interval> {
    if h == 0 {
        return Err(Error::Domain("h must be at least 1".into()));
    }
    if u.lo().is_negative() || v.lo().is_negative() {
        return Err(Error::Domain(format!("u and v must be non-negative, got u = {u}, v = {v}")));
    }
    let prec = u.prec().max(v.prec());
    let two_h = Interval::from_int(2, prec).powi(h as u64);
    let ur = nth_root(u, h);
    let e2 = Interval::from_int(2, prec).exp();
    let second = &two_h * &(&ur + &(&Interval::from_int(2, prec) * &e2)).powi(h as u64);
    if v.hi().is_zero() {
        return Ok(second);
    }
    if v.contains_zero() {
        return Err(Error::Domain(format!("v = {v} is neither certainly zero nor certainly positive")));
    }
    let hh = Interval::from_int(BigInt::from(h).pow(h), prec);
    let log_term = ln(&(&hh * v), "h^h v")?;
    let first = &two_h * &(&ur + &(&nth_root(v, h) * &log_term)).powi(h as u64);
    Ok(first.max(&second))
}

/// Largest `max |lambda_j|` over the first `m` coefficients.
pub fn max_abs(lambdas: &[BigInt], m: usize) -> BigInt {
    lambdas[..m].iter().map(|l| l.abs()).max().expect("m >= 1")
}

/// `log |w| + h(|u|) + m log(max_{j<=m} |lambda_j|) + (sum gaps) h(|alpha|) + log m`;
/// the last two terms are absent for `m = 1`.
pub fn gamma_height_bound(
    m: usize,
    w: &BigInt,
    h_u: &Interval,
    lambdas: &[BigInt],
    gaps: &[i64],
    h_alpha: &Interval,
) -> Result<Interval> {
    check_m(m, lambdas)?;
    if gaps.iter().any(|&g| g < 0) {
        return Err(Error::Domain("gaps must be non-negative".into()));
    }
    let prec = h_u.prec();
    let mut acc = &ln(&Interval::from_int(w.abs(), prec), "|w|")? + h_u;
    let lmax = Interval::from_int(max_abs(lambdas, m), prec);
    acc = &acc + &(&Interval::from_int(m as u64, prec) * &ln(&lmax, "lambda")?);
    if m >= 2 {
        let sum: i64 = gaps.iter().sum();
        acc = &acc + &(&Interval::from_int(sum, prec) * h_alpha);
        acc = &acc + &ln(&Interval::from_int(m as u64, prec), "m")?;
    }
    Ok(acc)
}

fn check_m(m: usize, lambdas: &[BigInt]) -> Result<()> {
    if m == 0 || m > lambdas.len() {
        return Err(Error::Domain(format!("m = {m} outside 1..={}", lambdas.len())));
    }
    Ok(())
}

/// `C_5^{(m)} = log|w| + h(|u|) + m log L + log m
///     + max{log|w| - log|u| - log C_2, log|u| + log L + log m - log|w|}`, `L = max_{j<=m} |lambda_j|`.
pub fn c5(
    m: usize,
    w: &BigInt,
    u_abs: &Interval,
    h_u: &Interval,
    lambdas: &[BigInt],
    c2_m: &Interval,
) -> Result<Interval> {
    check_m(m, lambdas)?;
    if !c2_m.is_positive() {
        return Err(Error::Domain(format!("C_2 must be certainly positive, got {c2_m}")));
    }
    let prec = u_abs.prec().max(h_u.prec());
    let log_w = ln(&Interval::from_int(w.abs(), prec), "|w|")?;
    let log_u = ln(u_abs, "|u|")?;
    let log_l = ln(&Interval::from_int(max_abs(lambdas, m), prec), "lambda")?;
    let log_m = ln(&Interval::from_int(m as u64, prec), "m")?;
    let log_c2 = ln(c2_m, "C_2")?;
    let mm = Interval::from_int(m as u64, prec);
    let base = &(&(&log_w + h_u) + &(&mm * &log_l)) + &log_m;
    let b1 = &(&log_w - &log_u) - &log_c2;
    let b2 = &(&(&log_u + &log_l) + &log_m) - &log_w;
    Ok(&base + &b1.max(&b2))
}

/// `A_3(m) = max{D C_5^{(m)} + D (sum gaps) h(|alpha|), 0.16}` (no gap term for `m = 1`).
pub fn a3(m: usize, d: u64, c5_m: &Interval, gaps: &[i64], h_alpha: &Interval) -> Result<Interval> {
    if m == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    if gaps.iter().any(|&g| g < 0) {
        return Err(Error::Domain("gaps must be non-negative".into()));
    }
    let prec = c5_m.prec();
    let di = Interval::from_int(d, prec);
    let mut acc = &di * c5_m;
    if m >= 2 {
        let sum: i64 = gaps.iter().sum();
        acc = &acc + &(&(&di * &Interval::from_int(sum, prec)) * h_alpha);
    }
    Ok(acc.max(&matveev_floor(prec)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Dyadic;

    const P: u32 = 256;

    /// Largest root of `x - u - v (log x)^h` on `[max(u, 3), inf)`, or `max(u, 3)` when there is
    /// none there (every solution then lies below it).
    fn largest_fixed_point(u: f64, v: f64, h: i32) -> f64 {
        let g = |x: f64| x - u - v * x.ln().powi(h);
        let lo0 = u.max(3.0);
        let mut hi = lo0.max(10.0);
        while g(hi) <= 0.0 {
            hi *= 2.0;
        }
        let mut right = hi;
        let mut left = right / 1.01;
        while left > lo0 && g(left) > 0.0 {
            right = left;
            left /= 1.01;
        }
        let left = left.max(lo0);
        if g(left) > 0.0 {
            return lo0;
        }
        let (mut a, mut b) = (left, right);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if g(mid) > 0.0 {
                b = mid;
            } else {
                a = mid;
            }
        }
        b
    }

    fn iv(n: i64) -> Interval {
        Interval::from_int(n, P)
    }

    #[test]
    fn matveev_base_value() {
        let input = MatveevInput { d: 1, a: vec![matveev_floor(P)], b: iv(1) };
        let v = matveev_log_lower_bound(&input).unwrap();
        assert!(v.contains(&Dyadic::from_int(-181_440)));
        assert!(v.width_f64() < 1e-6);
    }

    #[test]
    fn matveev_second_example_two_precisions() {
        let make = |p: u32| MatveevInput {
            d: 2,
            a: vec![Interval::one(p), Interval::one(p)],
            b: Interval::from_int(10, p),
        };
        let lo = matveev_log_lower_bound(&make(128)).unwrap();
        let hi = matveev_log_lower_bound(&make(512)).unwrap();
        assert!(lo.encloses(&hi));
        let expect = -1.4 * 30f64.powi(5) * 2f64.powf(4.5) * 4.0 * (1.0 + 2f64.ln()) * (1.0 + 10f64.ln());
        assert!((hi.to_f64() / expect - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matveev_rejects_small_a() {
        let input = MatveevInput { d: 1, a: vec![Interval::from_ratio(&1.into(), &10.into(), P)], b: iv(1) };
        assert!(matveev_log_lower_bound(&input).is_err());
    }

    #[test]
    fn c_matveev_values() {
        let v = c_matveev(1, 1, P).unwrap();
        assert!(v.contains(&Dyadic::from_int(37_800)));
        let a = c_matveev(3, 2, 128).unwrap();
        let b = c_matveev(3, 2, 512).unwrap();
        assert!(a.encloses(&b));
        let expect = 1.4 * 30f64.powi(5) * 3f64.powf(4.5) * 32.0 * (1.0 + 2f64.ln());
        assert!((b.to_f64() / expect - 1.0).abs() < 1e-12);
    }

    #[test]
    fn appendix_and_inline_coefficients_differ_by_d_squared_over_30() {
        for s in 1..4u64 {
            for d in [1u64, 2, 6, 24] {
                let app = c_matveev(s + 2, d, P).unwrap();
                let inl = matveev_coefficient_inline(s, d, P).unwrap();
                let ratio = (&app / &inl).to_f64();
                assert!((ratio - (d * d) as f64 / 30.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn petho_deweger_examples() {
        let b = petho_deweger_bound(&iv(10), &iv(1), 1).unwrap();
        assert!((b.to_f64() - 2.0 * (10.0 + 2.0 * 2f64.exp())).abs() < 1e-10);
        assert!((b.to_f64() - 49.556).abs() < 1e-3);
        let x0 = largest_fixed_point(10.0, 1.0, 1);
        assert!((x0 - 12.528).abs() < 1e-3);

        let b0 = petho_deweger_bound(&iv(7), &iv(0), 1).unwrap();
        assert!((b0.to_f64() - 2.0 * (7.0 + 2.0 * 2f64.exp())).abs() < 1e-10);

        let b2 = petho_deweger_bound(&iv(0), &iv(5), 2).unwrap();
        let first = 4.0 * (5f64.sqrt() * 20f64.ln()).powi(2);
        let second = 4.0 * (2.0 * 2f64.exp()).powi(2);
        assert!((b2.to_f64() - first.max(second)).abs() < 1e-8);
        assert!(largest_fixed_point(0.0, 5.0, 2) < b2.to_f64());
    }

    #[test]
    fn petho_deweger_domain() {
        assert!(petho_deweger_bound(&iv(-1), &iv(1), 1).is_err());
        assert!(petho_deweger_bound(&iv(1), &iv(1), 0).is_err());
    }

    #[test]
    fn gamma_height_cases() {
        let h_u = Interval::from_int(5, P).ln().unwrap() / iv(2);
        let h_a = Interval::from_f64(0.2406059125298, P);
        let l1: Vec<BigInt> = vec![1.into(), 1.into()];
        let g1 = gamma_height_bound(1, &1.into(), &h_u, &l1, &[], &h_a).unwrap();
        assert!(g1.overlaps(&h_u));
        let g2 = gamma_height_bound(2, &1.into(), &h_u, &l1, &[3], &h_a).unwrap();
        let expect = 0.5 * 5f64.ln() + 3.0 * 0.2406059125298 + 2f64.ln();
        assert!((g2.to_f64() - expect).abs() < 1e-12);
        assert!(gamma_height_bound(2, &1.into(), &h_u, &l1, &[-1], &h_a).is_err());
    }

    #[test]
    fn c5_fibonacci_case() {
        let u = Interval::one(P) / Interval::from_int(5, P).sqrt();
        let h_u = Interval::from_int(5, P).ln().unwrap() / iv(2);
        let l: Vec<BigInt> = vec![1.into(), 1.into()];
        let v = c5(2, &1.into(), &u, &h_u, &l, &Interval::one(P)).unwrap();
        let half_log5 = 0.5 * 5f64.ln();
        let expect = half_log5 + 2f64.ln() + half_log5.max(-half_log5 + 2f64.ln());
        assert!((v.to_f64() - expect).abs() < 1e-12);
    }

    #[test]
    fn a3_floor_and_cases() {
        let tiny = Interval::from_ratio(&1.into(), &100.into(), P);
        let h = Interval::from_f64(0.25, P);
        let v = a3(1, 1, &tiny, &[], &h).unwrap();
        assert!(v.contains(&matveev_floor(P).mid()) || v.lo() >= matveev_floor(P).lo());
        let c = iv(3);
        let v = a3(2, 2, &c, &[3], &h).unwrap();
        assert!((v.to_f64() - (6.0 + 2.0 * 3.0 * 0.25)).abs() < 1e-12);
        let v0 = a3(3, 2, &c, &[0, 0], &h).unwrap();
        assert!((v0.to_f64() - 6.0).abs() < 1e-12);
    }
}
