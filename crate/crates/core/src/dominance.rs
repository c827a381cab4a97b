//! Dominance constants: `C_1` with `|sum lambda_j U_{n_j}| > C_1 |U_{n_1}|`, `C_2^{(K)}` with
//! `|sum_{j<=K} lambda_j alpha^{n_j}| > C_2 |alpha|^{n_1}`, and `c_3` with
//! `|sum lambda_j U_{n_j}| > c_3 |alpha|^{n_1}`, all over strictly descending index tuples.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arith::{Dyadic, Interval, Round};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::recurrence::SpectralData;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DominanceMethod {
    AnalyticPositiveCase,
    UserSuppliedVerified,
}

impl DominanceMethod {
    pub fn label(&self) -> &'static str {
        match self {
            DominanceMethod::AnalyticPositiveCase => "analytic-positive-case",
            DominanceMethod::UserSuppliedVerified => "user-supplied-verified",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DominanceConfig {
    /// Share of `|u| C_2` reserved for the tail, in `(0, 1)`.
    pub ratio: BigRational,
    /// Every tuple with `n_1` up to this is scanned for a vanishing left side.
    pub window: usize,
    /// Refuse when the analytic threshold exceeds this.
    pub max_threshold: usize,
}

impl Default for DominanceConfig {
    fn default() -> Self {
        DominanceConfig {
            ratio: BigRational::new(1.into(), 2.into()),
            window: 60,
            max_threshold: 400,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DominanceCertificate {
    pub c1: Interval,
    pub c2_by_k: Vec<Interval>,
    pub c3: Interval,
    pub threshold_n0: usize,
    pub method: DominanceMethod,
    /// Largest `n_1` covered by exhaustive checks.
    pub window_checked: usize,
    pub caveat: Option<String>,
}

/// `1 - 2^-64`, the slack that turns `>=` into `>`.
fn shave(prec: u32) -> Interval {
    let one = Dyadic::one();
    Interval::point(one.sub(&one.ldexp(-64)), prec)
}

/// For real `alpha > 1` and positive `lambda_j`, every partial sum exceeds its first term,
/// so `C_2^{(K)} = lambda_1 (1 - 2^-64)` works for all `K`. `None` outside that case.
pub fn derive_c2_positive_case(instance: &Instance, spectral: &SpectralData) -> Option<Vec<Interval>> {
    let prec = spectral.precision;
    if !spectral.alpha.is_positive() || instance.lambdas().iter().any(|l| !l.is_positive()) {
        return None;
    }
    let c2 = &Interval::from_int(instance.lambdas()[0].clone(), prec) * &shave(prec);
    Some(vec![c2; instance.k()])
}

/// `beta^g` for `g = 0..=window`, `beta = 1/alpha`.
fn inverse_powers(spectral: &SpectralData, window: usize) -> Vec<Interval> {
    let beta = spectral.alpha.recip().expect("|alpha| > 1");
    let mut out = Vec::with_capacity(window + 1);
    out.push(Interval::one(spectral.precision));
    for g in 1..=window {
        let next = &out[g - 1] * &beta;
        out.push(next);
    }
    out
}

enum Check {
    Pass,
    Fail(Vec<usize>),
    Unclear,
}

/// True iff `|lambda_1 alpha^{n_1} + ... + lambda_K alpha^{n_K}| > C_2 |alpha|^{n_1}` for all
/// `window >= n_1 > ... > n_K >= 0`. Dividing by `alpha^{n_1}` leaves a function of the gaps
/// `n_1 - n_j` alone, so the gap tuples are enumerated.
pub fn verify_c2_window(
    instance: &Instance,
    spectral: &SpectralData,
    c2: &Interval,
    k: usize,
    window: usize,
) -> Result<bool> {
    if k == 0 || k > instance.k() {
        return Err(Error::Domain(format!("K = {k} outside 1..={}", instance.k())));
    }
    if window + 1 < k {
        return Err(Error::Domain("window must be at least K - 1".into()));
    }
    let prec = spectral.precision;
    let pw = inverse_powers(spectral, window);
    let lambdas: Vec<Interval> =
        instance.lambdas()[..k].iter().map(|l| Interval::from_int(l.clone(), prec)).collect();

    fn walk(
        lambdas: &[Interval],
        pw: &[Interval],
        c2: &Interval,
        gaps: &mut Vec<usize>,
        acc: &Interval,
        window: usize,
    ) -> Check {
        let pos = gaps.len() + 1;
        if pos == lambdas.len() {
            let m = acc.abs();
            return if m.certainly_gt(c2) {
                Check::Pass
            } else if !m.certainly_gt(c2) && m.hi() <= c2.lo() {
                Check::Fail(gaps.clone())
            } else {
                Check::Unclear
            };
        }
        let start = gaps.last().copied().unwrap_or(0) + 1;
        // the remaining lambdas need distinct larger gaps up to `window`
        let remaining = lambdas.len() - pos - 1;
        let mut unclear = false;
        for g in start..=window.saturating_sub(remaining) {
            gaps.push(g);
            let next = acc + &(&lambdas[pos] * &pw[g]);
            let r = walk(lambdas, pw, c2, gaps, &next, window);
            gaps.pop();
            match r {
                Check::Fail(t) => return Check::Fail(t),
                Check::Unclear => unclear = true,
                Check::Pass => {}
            }
        }
        if unclear {
            Check::Unclear
        } else {
            Check::Pass
        }
    }

    if k == 1 {
        let m = lambdas[0].abs();
        return if m.certainly_gt(c2) {
            Ok(true)
        } else if m.hi() <= c2.lo() {
            Ok(false)
        } else {
            Err(Error::PrecisionExhausted("cannot compare |lambda_1| with C_2".into()))
        };
    }
    let results: Vec<Check> = (1..=window)
        .into_par_iter()
        .map(|g2| {
            let mut gaps = vec![g2];
            let acc = &lambdas[0] + &(&lambdas[1] * &pw[g2]);
            walk(&lambdas, &pw, c2, &mut gaps, &acc, window)
        })
        .collect();
    let mut unclear = false;
    for r in results {
        match r {
            Check::Fail(_) => return Ok(false),
            Check::Unclear => unclear = true,
            Check::Pass => {}
        }
    }
    if unclear {
        return Err(Error::PrecisionExhausted("a C_2 comparison could not be certified".into()));
    }
    Ok(true)
}

/// First tuple with `n_1 <= limit` whose left side vanishes, scanning in parallel over `n_1`.
pub fn find_vanishing_tuple(instance: &Instance, table: &[BigInt], limit: usize) -> Option<Vec<usize>> {
    (0..=limit)
        .into_par_iter()
        .filter_map(|n1| {
            let mut hit = None;
            instance.for_each_tuple(table, n1, |n, lhs| {
                if hit.is_none() && lhs.is_zero() {
                    hit = Some(n.to_vec());
                }
            });
            hit
        })
        .min_by(|a, b| a.cmp(b))
}

/// Smallest `n_0 >= 0` with `L C_4 r^{n_0} <= rho |u| C_2`, where `r = max(1, |alpha_2|) / |alpha|`.
fn threshold(
    instance: &Instance,
    spectral: &SpectralData,
    c2: &Interval,
    rho: &Interval,
    c4: &Interval,
) -> Result<(usize, Interval)> {
    let prec = spectral.precision;
    let one = Interval::one(prec);
    let r = spectral.alpha2_abs.max(&one).checked_div(&spectral.alpha_abs).expect("|alpha| > 1");
    if !r.certainly_lt(&one) {
        return Err(Error::DegenerateDenominator("max(1, |alpha_2|) / |alpha| is not below 1".into()));
    }
    let l = Interval::from_int(instance.lambda_abs_sum(), prec);
    let target = &(rho * &spectral.u_abs()) * c2;
    let q = (&l * c4).checked_div(&target).expect("target positive");
    let n0 = if q.hi() <= Interval::one(prec).lo() {
        0
    } else {
        let num = q.ln().expect("q > 0");
        let den = -&r.ln().expect("r > 0");
        let x = num.checked_div(&den).expect("log(1/r) > 0");
        x.ceil_hi().max(BigInt::zero())
            .try_into()
            .map_err(|_| Error::DominanceUnsupported("analytic threshold overflows".into()))?
    };
    Ok((n0, r))
}

fn lower_point(x: &Interval) -> Interval {
    Interval::point(x.lo().clone(), x.prec())
}

/// Builds the certificate from `C_2^{(K)}`.
///
/// Beyond `n_0` the tail `sum |lambda_j| |U_{n_j} - u alpha^{n_j}| <= L C_4 max(1,|alpha_2|)^{n_1}`
/// is at most `rho |u| C_2 |alpha|^{n_1}`, leaving `(1 - rho) |u| C_2`. Below `n_0` the ratios
/// are minimized exhaustively with exact left sides.
pub fn derive_c1_and_c3(
    instance: &Instance,
    spectral: &SpectralData,
    c2_by_k: &[Interval],
    method: DominanceMethod,
    config: &DominanceConfig,
) -> Result<DominanceCertificate> {
    let prec = spectral.precision;
    if c2_by_k.len() != instance.k() {
        return Err(Error::Domain("need one C_2 per K".into()));
    }
    if c2_by_k.iter().any(|c| !c.is_positive()) {
        return Err(Error::DominanceFails("C_2 must be positive".into()));
    }
    let zero = BigRational::zero();
    if config.ratio <= zero || config.ratio >= BigRational::from_integer(1.into()) {
        return Err(Error::Domain("the tail ratio must lie in (0, 1)".into()));
    }
    let rho = Interval::from_rational(&config.ratio, prec);
    let one = Interval::one(prec);
    let c2 = c2_by_k[instance.k() - 1].clone();
    let d = spectral.order();
    let c4 = &Interval::from_int((d - 1) as u64, prec) * &spectral.u_max;

    let (n0, r) = threshold(instance, spectral, &c2, &rho, &c4)?;
    if n0 > config.max_threshold {
        return Err(Error::DominanceUnsupported(format!(
            "analytic threshold n0 = {n0} exceeds the exhaustive limit {}",
            config.max_threshold
        )));
    }
    let scan = n0.max(config.window);
    let table = instance.u_table(scan);
    if let Some(t) = find_vanishing_tuple(instance, &table, scan) {
        return Err(Error::DominanceFails(format!("the left side vanishes at n = {t:?}")));
    }

    let u_abs = spectral.u_abs();
    let main = &(&(&one - &rho) * &u_abs) * &c2;
    let c3_tail = lower_point(&main);
    // |U_{n_1}| <= (|u| + C_4 r^{n_1}) |alpha|^{n_1} and r^{n_1} <= r^{n_0}
    let grow = &u_abs + &(&c4 * &r.powi(n0 as u64));
    let c1_tail = lower_point(&main.checked_div(&grow).expect("positive"));

    // exhaustive part for n_1 < n_0
    let alpha_abs = spectral.alpha_abs.clone();
    let partial: Vec<(Option<Interval>, Option<BigRational>)> = (0..n0)
        .into_par_iter()
        .map(|n1| {
            let mut best3: Option<BigInt> = None;
            let mut best1: Option<BigRational> = None;
            instance.for_each_tuple(&table, n1, |_, lhs| {
                let a = lhs.abs();
                if best3.as_ref().is_none_or(|b| &a < b) {
                    best3 = Some(a.clone());
                }
                let un = table[n1].abs();
                if !un.is_zero() {
                    let q = BigRational::new(a, un);
                    if best1.as_ref().is_none_or(|b| &q < b) {
                        best1 = Some(q);
                    }
                }
            });
            let c3 = best3.map(|a| {
                Interval::from_int(a, prec).checked_div(&alpha_abs.powi(n1 as u64)).expect("positive")
            });
            (c3, best1)
        })
        .collect();

    let strict = shave(prec);
    let mut c3 = c3_tail;
    let mut c1 = c1_tail;
    for (p3, p1) in partial {
        if let Some(v) = p3 {
            let v = lower_point(&(&v * &strict));
            if v.lo() < c3.lo() {
                c3 = v;
            }
        }
        if let Some(q) = p1 {
            let v = lower_point(&(&Interval::from_rational(&q, prec) * &strict));
            if v.lo() < c1.lo() {
                c1 = v;
            }
        }
    }
    if !c3.is_positive() || !c1.is_positive() {
        return Err(Error::DominanceFails("no positive constant could be certified".into()));
    }
    let caveat = match method {
        DominanceMethod::AnalyticPositiveCase => None,
        DominanceMethod::UserSuppliedVerified => Some(format!(
            "C_2 was supplied by the user and checked only for n_1 <= {scan}; a vanishing left side \
             beyond that window cannot be excluded"
        )),
    };
    Ok(DominanceCertificate {
        c1: Interval::point(c1.lo().round(64, Round::Down), prec),
        c2_by_k: c2_by_k.to_vec(),
        c3: Interval::point(c3.lo().round(64, Round::Down), prec),
        threshold_n0: n0,
        method,
        window_checked: scan,
        caveat,
    })
}

/// Full certificate: scan for vanishing tuples, then the analytic positive case or a supplied
/// `C_2` verified on every `K` over the window.
pub fn certify_dominance(
    instance: &Instance,
    spectral: &SpectralData,
    c2_override: Option<&Interval>,
    config: &DominanceConfig,
) -> Result<DominanceCertificate> {
    let table = instance.u_table(config.window);
    if let Some(t) = find_vanishing_tuple(instance, &table, config.window) {
        return Err(Error::DominanceFails(format!("the left side vanishes at n = {t:?}")));
    }
    if let Some(c2) = c2_override {
        if !c2.is_positive() {
            return Err(Error::DominanceFails("supplied C_2 must be positive".into()));
        }
        let c2_by_k = vec![c2.clone(); instance.k()];
        // the threshold depends on C_2; verify over whichever window is larger
        let rho = Interval::from_rational(&config.ratio, spectral.precision);
        let c4 = &Interval::from_int((spectral.order() - 1) as u64, spectral.precision) * &spectral.u_max;
        let (n0, _) = threshold(instance, spectral, c2, &rho, &c4)?;
        let window = n0.max(config.window);
        for k in 1..=instance.k() {
            if !verify_c2_window(instance, spectral, c2, k, window)? {
                return Err(Error::DominanceFails(format!(
                    "supplied C_2 = {} fails the window check for K = {k}",
                    c2.format(6)
                )));
            }
        }
        return derive_c1_and_c3(instance, spectral, &c2_by_k, DominanceMethod::UserSuppliedVerified, config);
    }
    match derive_c2_positive_case(instance, spectral) {
        Some(c2_by_k) => {
            derive_c1_and_c3(instance, spectral, &c2_by_k, DominanceMethod::AnalyticPositiveCase, config)
        }
        None => Err(Error::DominanceUnsupported(
            "C_2 can be derived only for a positive dominant root and positive lambdas; supply one".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{analyze_spectrum, RecurrenceSpec, SpectralConfig};

    fn inst(a: &[i64], u0: &[i64], l: &[i64], w: i64, p: &[i64]) -> (Instance, SpectralData) {
        let spec = RecurrenceSpec::from_i64s(a, u0).unwrap();
        let sp = analyze_spectrum(&spec, &SpectralConfig::default()).unwrap();
        let i = Instance::new(
            spec,
            l.iter().map(|&x| x.into()).collect(),
            w.into(),
            p.iter().map(|&x| x.into()).collect(),
        )
        .unwrap();
        (i, sp)
    }

    #[test]
    fn positive_case_values() {
        let (i, s) = inst(&[1, 1], &[0, 1], &[1, 1], 1, &[2]);
        let c2 = derive_c2_positive_case(&i, &s).unwrap();
        assert_eq!(c2.len(), 2);
        assert!((c2[0].to_f64() - 1.0).abs() < 1e-15);
        assert!(c2[0].certainly_lt(&Interval::one(s.precision)));
        let (i, s) = inst(&[1, 1], &[0, 1], &[3, 1, 2], 1, &[2]);
        assert!((derive_c2_positive_case(&i, &s).unwrap()[2].to_f64() - 3.0).abs() < 1e-15);
        let (i, s) = inst(&[1, 1], &[0, 1], &[1, -1], 1, &[2]);
        assert!(derive_c2_positive_case(&i, &s).is_none());
    }

    #[test]
    fn window_checks() {
        let (i, s) = inst(&[1, 1], &[0, 1], &[1, 1], 1, &[2]);
        let c2 = Interval::from_f64(1.0 - 1e-6, s.precision);
        assert!(verify_c2_window(&i, &s, &c2, 2, 30).unwrap());
        assert!(verify_c2_window(&i, &s, &c2, 1, 30).unwrap());
        let huge = Interval::from_int(1_000_000, s.precision);
        assert!(!verify_c2_window(&i, &s, &huge, 2, 30).unwrap());
    }

    #[test]
    fn fibonacci_certificate() {
        let (i, s) = inst(&[1, 1], &[0, 1], &[1, 1], 1, &[2]);
        let c = certify_dominance(&i, &s, None, &DominanceConfig::default()).unwrap();
        assert_eq!(c.method, DominanceMethod::AnalyticPositiveCase);
        assert!(c.c1.is_positive() && c.c3.is_positive());
        // F_{n1} + F_{n2} >= F_{n1}, so C_1 close to 1 is possible; ours must not exceed the true infimum
        let t = i.u_table(60);
        for n1 in 1..=60 {
            i.for_each_tuple(&t, n1, |_, lhs| {
                let lhs = Interval::from_int(lhs.abs(), s.precision);
                let rhs = &c.c1 * &Interval::from_int(t[n1].abs(), s.precision);
                assert!(lhs.certainly_gt(&rhs) || t[n1].is_zero());
                let rhs3 = &c.c3 * &s.alpha_abs.powi(n1 as u64);
                assert!(lhs.certainly_gt(&rhs3));
            });
        }
    }

    #[test]
    fn mixed_signs_vanish() {
        let (i, s) = inst(&[1, 1], &[0, 1], &[1, -1], 1, &[2]);
        let e = certify_dominance(&i, &s, None, &DominanceConfig::default()).unwrap_err();
        assert!(matches!(e, Error::DominanceFails(_)), "{e:?}");
    }

    #[test]
    fn supplied_c2_two_and_minus_one() {
        // U_n = (2^n - (-1)^n) / 3, roots 2 and -1
        let (i, s) = inst(&[1, 2], &[0, 1], &[2, -1], 1, &[3]);
        let c2 = Interval::from_ratio(&1.into(), &1.into(), s.precision);
        let cert = certify_dominance(&i, &s, Some(&c2), &DominanceConfig::default()).unwrap();
        assert_eq!(cert.method, DominanceMethod::UserSuppliedVerified);
        assert!(cert.caveat.is_some());
        let t = i.u_table(60);
        let mut min_ratio = f64::INFINITY;
        for n1 in 1..=60usize {
            i.for_each_tuple(&t, n1, |_, lhs| {
                let r = Interval::from_int(lhs.abs(), s.precision)
                    .checked_div(&s.alpha_abs.powi(n1 as u64))
                    .unwrap();
                min_ratio = min_ratio.min(r.to_f64());
            });
        }
        assert!(cert.c3.to_f64() < min_ratio);
        let absurd = Interval::from_int(100, s.precision);
        assert!(certify_dominance(&i, &s, Some(&absurd), &DominanceConfig::default()).is_err());
    }
}
