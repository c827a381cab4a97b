//! The bound on `n_1`: the constants of the induction on `n_1 - n_m`, the `Lambda = 0`
//! branches, and the final bound on `n_1` and every `z_i`.
//!
//! [`FormulaMode::Literal`] evaluates the displayed formulas literally. [`FormulaMode::Conservative`]
//! (the default) repairs the steps that do not hold as written; each repair can only enlarge
//! the result. See `README.md` for the list.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith::Interval;
use crate::baker::{c5, c_matveev, matveev_coefficient_inline, matveev_floor, max_abs, petho_deweger_bound};
use crate::dominance::DominanceCertificate;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::recurrence::SpectralData;
use crate::report::{BoundReport, ReportBuilder};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FormulaMode {
    Literal,
    #[default]
    Conservative,
}

impl FormulaMode {
    pub fn label(&self) -> &'static str {
        match self {
            FormulaMode::Literal => "literal",
            FormulaMode::Conservative => "conservative",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct BoundConfig {
    pub mode: FormulaMode,
    /// Replaces the splitting-field degree bound; must not be smaller than the computed one.
    pub degree_override: Option<u64>,
}

fn ln(x: &Interval, what: &str) -> Result<Interval> {
    x.ln().ok_or_else(|| Error::Domain(format!("log of non-positive {what}: {x}")))
}

fn int(v: impl Into<BigInt>, prec: u32) -> Interval {
    Interval::from_int(v, prec)
}

/// `c_1 = k max|lambda_j| sum |u_j|` and `c_2 = log_*(c_1/|w|) / log|alpha|`.
pub fn lemma35_constants(instance: &Instance, spectral: &SpectralData) -> Result<(Interval, Interval)> {
    let prec = spectral.precision;
    let mut sum = Interval::zero(prec);
    for c in &spectral.coefficients {
        sum = &sum + &c.abs();
    }
    let c1 = &(&int(instance.k() as u64, prec) * &int(instance.lambda_max(), prec)) * &sum;
    let ratio = c1.checked_div(&int(instance.w().abs(), prec)).expect("w != 0");
    let top = ratio.log_star().ok_or_else(|| Error::Domain("c_1 / |w| must be positive".into()))?;
    let c2 = top.checked_div(&ln(&spectral.alpha_abs, "|alpha|")?).expect("log|alpha| > 0");
    Ok((c1, c2))
}

/// `floor((2 log|alpha| / log p) n1_bound)` from the upper endpoint.
pub fn z_bound(p: &BigInt, n1_bound: &BigInt, c2: &Interval, spectral: &SpectralData) -> Result<BigInt> {
    let prec = spectral.precision;
    let n1 = int(n1_bound.clone(), prec);
    if !n1.certainly_gt(c2) {
        return Err(Error::Domain(format!("n1_bound = {n1_bound} does not exceed c_2 = {}", c2.format(10))));
    }
    let r = (&int(2, prec) * &ln(&spectral.alpha_abs, "|alpha|")?)
        .checked_div(&ln(&int(p.clone(), prec), "p")?)
        .expect("log p > 0");
    Ok((&r * &n1).floor_hi())
}

/// Quantities shared by every step.
struct Context<'a> {
    instance: &'a Instance,
    spectral: &'a SpectralData,
    cert: &'a DominanceCertificate,
    mode: FormulaMode,
    prec: u32,
    d: u64,
    log_alpha: Interval,
    log_mu: Interval,
    d1: Interval,
    b_factor: Interval,
    m_coef: Interval,
    a2: Interval,
    prod_log_p: Interval,
    c4: Interval,
}

impl<'a> Context<'a> {
    fn new(
        instance: &'a Instance,
        spectral: &'a SpectralData,
        cert: &'a DominanceCertificate,
        config: &BoundConfig,
    ) -> Result<Self> {
        let prec = spectral.precision;
        let d = match config.degree_override {
            Some(d) if d < spectral.degree_bound => {
                return Err(Error::Domain(format!(
                    "degree override {d} is below the certified bound {}",
                    spectral.degree_bound
                )))
            }
            Some(d) => d,
            None => spectral.degree_bound,
        };
        if cert.c2_by_k.len() != instance.k() {
            return Err(Error::Domain("certificate does not match the instance".into()));
        }
        let one = Interval::one(prec);
        let log_alpha = ln(&spectral.alpha_abs, "|alpha|")?;
        let mu = spectral
            .alpha_abs
            .checked_div(&spectral.alpha2_abs)
            .ok_or_else(|| Error::DegenerateDenominator("|alpha_2| is zero".into()))?
            .min(&spectral.alpha_abs);
        if !mu.certainly_gt(&one) {
            return Err(Error::DegenerateDenominator(
                "min{|alpha|/|alpha_2|, |alpha|} is not certainly above 1".into(),
            ));
        }
        let log_mu = ln(&mu, "mu")?;
        let d1 = (&int(2, prec) * &log_alpha).checked_div(&ln(&int(2, prec), "2")?).expect("log 2 > 0");
        let dd = int(d, prec);
        let s = instance.s() as u64;
        let (b_factor, m_coef) = match config.mode {
            FormulaMode::Literal => (&one + &ln(&d1, "d_1")?, c_matveev(s + 2, d, prec)?),
            FormulaMode::Conservative => {
                // B = max(d_1, 1) n_1 and 1 + log B <= b_factor log n_1 once n_1 >= 3
                let l = &one + &ln(&d1.max(&one), "d_1")?;
                let alt = &one + &l.checked_div(&ln(&int(3, prec), "3")?).expect("log 3 > 0");
                let mc = c_matveev(s + 2, d, prec)?.max(&matveev_coefficient_inline(s, d, prec)?);
                (l.max(&alt), mc)
            }
        };
        let a2 = (&dd * &spectral.h_alpha).max(&log_alpha).max(&matveev_floor(prec));
        let mut prod_log_p = one.clone();
        for p in instance.primes() {
            prod_log_p = &prod_log_p * &ln(&int(p.clone(), prec), "p")?;
        }
        let c4 = &int((spectral.order() - 1) as u64, prec) * &spectral.u_max;
        Ok(Context {
            instance,
            spectral,
            cert,
            mode: config.mode,
            prec,
            d,
            log_alpha,
            log_mu,
            d1,
            b_factor,
            m_coef,
            a2,
            prod_log_p,
            c4,
        })
    }

    fn lambda_max(&self, m: usize) -> Interval {
        int(max_abs(self.instance.lambdas(), m), self.prec)
    }

    fn c2(&self, m: usize) -> &Interval {
        &self.cert.c2_by_k[m - 1]
    }

    fn c5(&self, m: usize) -> Result<Interval> {
        let sp = self.spectral;
        c5(m, self.instance.w(), &sp.u_abs(), &sp.h_u, self.instance.lambdas(), self.c2(m))
    }

    /// `log x`, clamped at 0 in conservative mode (a negative log cannot be absorbed by
    /// multiplying with `(log n_1)^h >= 1`).
    fn log_clamped(&self, x: &Interval, what: &str) -> Result<Interval> {
        let l = ln(x, what)?;
        Ok(match self.mode {
            FormulaMode::Literal => l,
            FormulaMode::Conservative => l.max(&Interval::zero(self.prec)),
        })
    }

    /// `C_9` aggregating `A_3(m)` with the gap sum `N_2 + ... + N_m`.
    fn c9(&self, c5_m: &Interval, n_sum: &Interval) -> Interval {
        let dd = int(self.d, self.prec);
        let mut a3 = &(&dd * c5_m) + &(&(&dd * n_sum) * &self.spectral.h_alpha);
        if self.mode == FormulaMode::Conservative {
            a3 = a3.max(&matveev_floor(self.prec));
        }
        &(&(&(&self.m_coef * &self.b_factor) * &self.prod_log_p) * &self.a2) * &a3
    }

    fn c6_c7_c8(&self, m: usize) -> (Interval, Interval, Interval) {
        let prec = self.prec;
        let k = self.instance.k();
        let d = self.spectral.order();
        let sp = self.spectral;
        let u_abs = sp.u_abs();
        let spread = &int(((d - 1) * (m - 1)) as u64, prec) * &sp.u_max;
        let (lmax, c2, c6) = match self.mode {
            FormulaMode::Literal => {
                let l = self.lambda_max(m);
                let c6 = &l * &(&(&u_abs + &self.cert.c1) + &spread);
                (l, self.c2(m).clone(), c6)
            }
            FormulaMode::Conservative => {
                // every term with index >= m is at most (|u| + C_4)|alpha|^{n_m}; the
                // lower bound C_2 is applied to the first m - 1 terms
                let l = self.lambda_max(k);
                let big = &u_abs + &self.cert.c1.max(&self.c4);
                let c6 = &l * &(&(&int((k - m + 1) as u64, prec) * &big) + &spread);
                (l, self.c2(m - 1).clone(), c6)
            }
        };
        let denom = &c2 * &u_abs;
        let c7_num = &int(d as u64, prec) + &(&spread * &lmax);
        let c7 = c7_num.checked_div(&denom).expect("C_2 |u| > 0");
        let c8 = c6.checked_div(&denom).expect("C_2 |u| > 0").max(&c7);
        (c6, c7, c8)
    }
}

/// One step of the induction on `n_1 - n_m`.
#[derive(Clone, Debug)]
pub struct GapStep {
    pub m: usize,
    pub c5_prev: Interval,
    pub c6: Interval,
    pub c7: Interval,
    pub c8: Interval,
    pub c9_prev: Interval,
    pub n: Interval,
}

/// `(C_6^{(m)}, C_7^{(m)}, C_8^{(m)})` for `2 <= m <= k`.
pub fn c6_c7_c8(
    m: usize,
    instance: &Instance,
    spectral: &SpectralData,
    cert: &DominanceCertificate,
    config: &BoundConfig,
) -> Result<(Interval, Interval, Interval)> {
    if m < 2 || m > instance.k() {
        return Err(Error::Domain(format!("m = {m} outside 2..={}", instance.k())));
    }
    Ok(Context::new(instance, spectral, cert, config)?.c6_c7_c8(m))
}

fn gap_steps(ctx: &Context) -> Result<Vec<GapStep>> {
    let mut out: Vec<GapStep> = Vec::new();
    let mut n_sum = Interval::zero(ctx.prec);
    for m in 2..=ctx.instance.k() {
        let c5_prev = ctx.c5(m - 1)?;
        let c9_prev = ctx.c9(&c5_prev, &n_sum);
        let (c6, c7, c8) = ctx.c6_c7_c8(m);
        let log_c8 = ctx.log_clamped(&c8, "C_8")?;
        let n = (&c9_prev + &log_c8).checked_div(&ctx.log_mu).expect("log mu > 0");
        n_sum = &n_sum + &n;
        out.push(GapStep { m, c5_prev, c6, c7, c8, c9_prev, n });
    }
    Ok(out)
}

/// `N_2, ..., N_k` with their constants, in order.
pub fn induction_gap_bounds(
    instance: &Instance,
    spectral: &SpectralData,
    cert: &DominanceCertificate,
    config: &BoundConfig,
) -> Result<Vec<GapStep>> {
    gap_steps(&Context::new(instance, spectral, cert, config)?)
}

/// Which `Lambda = 0` case to bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaZeroCase {
    /// `Lambda_m = 0` inside the induction, `2 <= m <= k`.
    Induction(usize),
    /// `Lambda = 0` in the final step.
    Final,
}

#[derive(Clone, Debug)]
pub struct LambdaZeroBound {
    pub case: LambdaZeroCase,
    pub u: Interval,
    pub v: Interval,
    /// Exponent of `log n_1`; 0 means `n_1 <= u` directly.
    pub h: u32,
    pub bound: Interval,
    pub clamped: bool,
}

fn lambda_zero(ctx: &Context, case: LambdaZeroCase, ns: &[Interval]) -> Result<LambdaZeroBound> {
    let prec = ctx.prec;
    let k = ctx.instance.k();
    let (j, h, used) = match case {
        LambdaZeroCase::Induction(m) => {
            if m < 2 || m > k {
                return Err(Error::Domain(format!("m = {m} outside 2..={k}")));
            }
            (m - 1, (m - 2) as u32, m.saturating_sub(2))
        }
        LambdaZeroCase::Final => (k, (k - 1) as u32, k - 1),
    };
    if ns.len() < used {
        return Err(Error::Domain(format!("need N_2..N_{} ({} values), got {}", used + 1, used, ns.len())));
    }
    let sp = ctx.spectral;
    let log_w = ln(&int(ctx.instance.w().abs(), prec), "|w|")?;
    let mut num = &(&log_w + &sp.h_u) + &(&int(j as u64, prec) * &ln(&ctx.lambda_max(j), "lambda")?);
    num = &num + &ln(&int(j as u64, prec), "m")?;
    num = &num - &ln(&ctx.cert.c3, "c_3")?;
    if ctx.mode == FormulaMode::Conservative {
        // sum z_i log p_i = log(|lhs| / |w|) > n_1 log|alpha| + log c_3 - log|w|
        num = &num + &log_w;
    }
    let den = &sp.h_alpha + &ctx.log_alpha;
    let mut u = num.checked_div(&den).expect("positive");
    let mut n_sum = Interval::zero(prec);
    for n in &ns[..used] {
        n_sum = &n_sum + n;
    }
    let v = (&n_sum * &sp.h_alpha).checked_div(&den).expect("positive");
    let zero = Interval::zero(prec);
    let clamped = !u.lo().is_positive() && !u.lo().is_zero();
    if clamped {
        u = u.max(&zero);
    }
    let bound = if h == 0 { u.clone() } else { petho_deweger_bound(&u, &v, h)? };
    Ok(LambdaZeroBound { case, u, v, h, bound, clamped })
}

/// Bound on `n_1` in one `Lambda = 0` case, given `N_2, ...` in order.
pub fn lambda_zero_branch(
    case: LambdaZeroCase,
    instance: &Instance,
    spectral: &SpectralData,
    cert: &DominanceCertificate,
    ns: &[Interval],
    config: &BoundConfig,
) -> Result<LambdaZeroBound> {
    lambda_zero(&Context::new(instance, spectral, cert, config)?, case, ns)
}

/// The complete report.
pub fn final_n1_bound(
    instance: &Instance,
    spectral: &SpectralData,
    cert: &DominanceCertificate,
    config: &BoundConfig,
) -> Result<BoundReport> {
    let ctx = Context::new(instance, spectral, cert, config)?;
    let prec = ctx.prec;
    let k = instance.k();
    let d = spectral.order();
    let (c1, c2) = lemma35_constants(instance, spectral)?;
    let steps = gap_steps(&ctx)?;
    let ns: Vec<Interval> = steps.iter().map(|s| s.n.clone()).collect();

    let u_abs = spectral.u_abs();
    let lmax = ctx.lambda_max(k);
    let c10 = (&(&(&int((k * (d - 1)) as u64, prec) * &lmax) * &spectral.u_max))
        .checked_div(&(ctx.c2(k) * &u_abs))
        .expect("C_2 |u| > 0");
    let c5_k = ctx.c5(k)?;
    let mut n_sum = Interval::zero(prec);
    for n in &ns {
        n_sum = &n_sum + n;
    }
    let c9_k = ctx.c9(&c5_k, &n_sum);
    let log_c10 = ctx.log_clamped(&c10, "C_10")?;
    let n_max = (&log_c10 + &c9_k).checked_div(&ctx.log_mu).expect("log mu > 0");
    let main = petho_deweger_bound(&Interval::zero(prec), &n_max, k as u32)?;

    let mut zero_bounds = Vec::new();
    for m in 2..=k {
        zero_bounds.push(lambda_zero(&ctx, LambdaZeroCase::Induction(m), &ns)?);
    }
    zero_bounds.push(lambda_zero(&ctx, LambdaZeroCase::Final, &ns)?);

    let mut top = main.max(&(&c2 + &Interval::one(prec))).max(&int(3, prec));
    for z in &zero_bounds {
        top = top.max(&z.bound);
    }
    let n1_bound = top.ceil_hi();
    let mut z_bounds = Vec::with_capacity(instance.s());
    for p in instance.primes() {
        z_bounds.push(z_bound(p, &n1_bound, &c2, spectral)?);
    }

    let mut b = ReportBuilder::new(instance, spectral, cert, ctx.mode, ctx.d);
    b.push("c1", &c1, "upper bound constant: |lhs| < c1 |alpha|^n1");
    b.push("c2", &c2, "threshold for the z_i bound: log_*(c1/|w|) / log|alpha|");
    b.push("c3", &cert.c3, "dominance: |lhs| > c3 |alpha|^n1");
    b.push("C1", &cert.c1, "dominance: |lhs| > C1 |U_n1|");
    for (i, c) in cert.c2_by_k.iter().enumerate() {
        b.push(&format!("C2^(K={})", i + 1), c, "dominance: |sum_{j<=K} lambda_j alpha^n_j| > C2 |alpha|^n1");
    }
    b.push("C4", &ctx.c4, "|U_n - u alpha^n| <= C4 max(1,|alpha_2|)^n, (d-1) u_max");
    b.push("d1", &ctx.d1, "B-multiplier 2 log|alpha| / log 2");
    b.push("(1+log B) factor", &ctx.b_factor, "1 + log B <= factor * log n1");
    b.push("Matveev coefficient", &ctx.m_coef, "C_M(s+2) with the field degree bound");
    b.push("A2", &ctx.a2, "Matveev height parameter for |alpha|");
    b.push("log min{|alpha|/|alpha_2|, |alpha|}", &ctx.log_mu, "decay rate of the error terms");
    for m in 1..=k {
        b.push(&format!("C5^(m={m})"), &ctx.c5(m)?, "height and size of gamma_m");
    }
    for s in &steps {
        let m = s.m;
        b.push(&format!("C6^(m={m})"), &s.c6, "|sum_{j<m} u lambda_j alpha^n_j - w prod p^z| < C6 |alpha|^n_m");
        b.push(&format!("C7^(m={m})"), &s.c7, "|Lambda_m| bound when |alpha_2| >= 1");
        b.push(&format!("C8^(m={m})"), &s.c8, "|Lambda_m| < C8 / min{...}^(n1-n_m)");
        b.push(&format!("C9^(m={})", m - 1), &s.c9_prev, "Matveev: log|Lambda_m| > -C9 (log n1)^(m-1)");
        b.push(&format!("N_{m}"), &s.n, "n1 - n_m <= N_m (log n1)^(m-1)");
    }
    b.push(&format!("C9^(m={k})"), &c9_k, "Matveev: log|Lambda| > -C9 (log n1)^k");
    b.push("C10", &c10, "|Lambda| < C10 / min{...}^n1");
    b.push("N_max", &n_max, "n1 < N_max (log n1)^k");
    b.push("main branch", &main, "2^k max{N_max (log(k^k N_max))^k, (2e^2)^k}");
    for z in &zero_bounds {
        let tag = match z.case {
            LambdaZeroCase::Induction(m) => format!("m={m}"),
            LambdaZeroCase::Final => "final".to_string(),
        };
        b.push(&format!("Lambda=0 u ({tag})"), &z.u, "Pethő-de Weger input u");
        b.push(&format!("Lambda=0 v ({tag})"), &z.v, "Pethő-de Weger input v");
        b.push(&format!("Lambda=0 bound ({tag})"), &z.bound, "n1 bound when the linear form vanishes");
        if z.clamped {
            b.note(format!("Lambda=0 ({tag}): negative u clamped to 0"));
        }
    }
    Ok(b.finish(n1_bound, z_bounds))
}

/// Certifies dominance with defaults and builds the report.
pub fn compute_report(
    instance: &Instance,
    spectral: &SpectralData,
    c2_override: Option<&Interval>,
    config: &BoundConfig,
) -> Result<BoundReport> {
    let cert = crate::dominance::certify_dominance(
        instance,
        spectral,
        c2_override,
        &crate::dominance::DominanceConfig::default(),
    )?;
    final_n1_bound(instance, spectral, &cert, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominance::{certify_dominance, DominanceConfig};
    use crate::recurrence::{analyze_spectrum, RecurrenceSpec, SpectralConfig};

    fn fib_instance(l: &[i64], w: i64, p: &[i64]) -> (Instance, SpectralData, DominanceCertificate) {
        let spec = RecurrenceSpec::from_i64s(&[1, 1], &[0, 1]).unwrap();
        let sp = analyze_spectrum(&spec, &SpectralConfig::with_precision(256)).unwrap();
        let inst = Instance::new(
            spec,
            l.iter().map(|&x| x.into()).collect(),
            w.into(),
            p.iter().map(|&x| x.into()).collect(),
        )
        .unwrap();
        let cert = certify_dominance(&inst, &sp, None, &DominanceConfig::default()).unwrap();
        (inst, sp, cert)
    }

    #[test]
    fn lemma35_fibonacci() {
        let (i, s, _) = fib_instance(&[1, 1], 1, &[2]);
        let (c1, c2) = lemma35_constants(&i, &s).unwrap();
        let expect_c1 = 4.0 / 5f64.sqrt();
        assert!((c1.to_f64() - expect_c1).abs() < 1e-14);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((c2.to_f64() - expect_c1.ln() / phi.ln()).abs() < 1e-13);
        let (i, s, _) = fib_instance(&[1, 1], 3, &[2]);
        assert!(lemma35_constants(&i, &s).unwrap().1.contains(&crate::arith::Dyadic::zero()));
    }

    #[test]
    fn z_bound_fibonacci() {
        let (_, s, _) = fib_instance(&[1, 1], 1, &[2]);
        let z = z_bound(&2.into(), &100.into(), &Interval::from_int(2, 256), &s).unwrap();
        assert_eq!(z, BigInt::from(138));
        assert!(z_bound(&2.into(), &1.into(), &Interval::from_int(2, 256), &s).is_err());
        let big = z_bound(&1_000_003.into(), &100.into(), &Interval::one(256), &s).unwrap();
        assert!(big < BigInt::from(100));
    }

    #[test]
    fn c8_dominates_parts() {
        let (i, s, c) = fib_instance(&[3, 1, 2], 1, &[2, 5, 7]);
        for mode in [FormulaMode::Literal, FormulaMode::Conservative] {
            let cfg = BoundConfig { mode, degree_override: None };
            for m in 2..=3 {
                let (c6, c7, c8) = c6_c7_c8(m, &i, &s, &c, &cfg).unwrap();
                assert!(c8.hi() >= c7.hi());
                let part = c6.checked_div(&(&c.c2_by_k[m - 2] * &s.u_abs())).unwrap();
                assert!(c8.hi() >= part.lo());
            }
        }
        assert!(c6_c7_c8(1, &i, &s, &c, &BoundConfig::default()).is_err());
    }

    #[test]
    fn conservative_never_below_literal() {
        let (i, s, c) = fib_instance(&[3, 1, 2], 3, &[2, 5]);
        let literal = final_n1_bound(&i, &s, &c, &BoundConfig { mode: FormulaMode::Literal, degree_override: None });
        let cons = final_n1_bound(&i, &s, &c, &BoundConfig::default()).unwrap();
        if let Ok(p) = literal {
            assert!(cons.n1_bound() >= p.n1_bound());
        }
    }

    #[test]
    fn n_values_grow_with_m() {
        let (i, s, c) = fib_instance(&[3, 1, 2], 1, &[2]);
        let steps = induction_gap_bounds(&i, &s, &c, &BoundConfig::default()).unwrap();
        assert_eq!(steps.len(), 2);
        assert!(steps[1].n.certainly_gt(&steps[0].n));
    }

    #[test]
    fn lambda_zero_cases() {
        let (i, s, c) = fib_instance(&[1, 1], 1, &[2]);
        let cfg = BoundConfig::default();
        let b2 = lambda_zero_branch(LambdaZeroCase::Induction(2), &i, &s, &c, &[], &cfg).unwrap();
        assert_eq!(b2.h, 0);
        assert!(b2.v.contains(&crate::arith::Dyadic::zero()));
        let steps = induction_gap_bounds(&i, &s, &c, &cfg).unwrap();
        let ns: Vec<_> = steps.iter().map(|s| s.n.clone()).collect();
        let fin = lambda_zero_branch(LambdaZeroCase::Final, &i, &s, &c, &ns, &cfg).unwrap();
        assert_eq!(fin.h, 1);
        let e2 = Interval::from_int(2, 256).exp();
        let expect = (&Interval::from_int(2, 256) * &(&fin.u + &(&Interval::from_int(2, 256) * &e2)))
            .max(&(&Interval::from_int(2, 256) * &(&fin.u + &(&fin.v * &fin.v.ln().unwrap()))));
        assert!(fin.bound.overlaps(&expect));
        assert!(lambda_zero_branch(LambdaZeroCase::Induction(3), &i, &s, &c, &ns, &cfg).is_err());
    }

    #[test]
    fn degree_override_monotone() {
        let (i, s, c) = fib_instance(&[2, 1], 1, &[2, 3]);
        let base = final_n1_bound(&i, &s, &c, &BoundConfig::default()).unwrap();
        let bigger =
            final_n1_bound(&i, &s, &c, &BoundConfig { degree_override: Some(6), ..Default::default() }).unwrap();
        assert!(bigger.n1_bound() > base.n1_bound());
        assert!(final_n1_bound(&i, &s, &c, &BoundConfig { degree_override: Some(1), ..Default::default() })
            .is_err());
    }

    #[test]
    fn report_is_deterministic_and_sane() {
        let (i, s, c) = fib_instance(&[1, 1], 1, &[2]);
        let a = final_n1_bound(&i, &s, &c, &BoundConfig::default()).unwrap();
        let b = final_n1_bound(&i, &s, &c, &BoundConfig::default()).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.n1_bound() >= BigInt::from(3));
        assert!(a.n1_bound() > BigInt::from(10).pow(20));
        assert_eq!(a.z_bounds().len(), 1);
    }
}
