//! Integer linear recurrences and the certified spectral data of their companion polynomials.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{ComplexInterval, Dyadic, Interval};
use crate::error::{Error, Result};
use crate::height::height_from_conjugates;
use crate::poly::{is_perfect_square, is_squarefree, IntPoly, RatMatrix, RatPoly};
use crate::roots::{isolate_roots, minimal_factor, RootEnclosure, DEFAULT_PRECISION_CEILING};

/// Orders above this are refused; `d!` must fit the degree bound.
pub const MAX_ORDER: usize = 20;

/// `U_n = a_1 U_{n-1} + ... + a_d U_{n-d}` with given `U_0, ..., U_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    coefficients: Vec<BigInt>,
    initial_terms: Vec<BigInt>,
}

impl RecurrenceSpec {
    pub fn new(coefficients: Vec<BigInt>, initial_terms: Vec<BigInt>) -> Result<Self> {
        let d = coefficients.len();
        if d < 2 {
            return Err(Error::InvalidSpec(format!("order must be at least 2, got {d}")));
        }
        if d > MAX_ORDER {
            return Err(Error::InvalidSpec(format!("order {d} exceeds the supported maximum {MAX_ORDER}")));
        }
        if coefficients[d - 1].is_zero() {
            return Err(Error::InvalidSpec("a_d must be nonzero, otherwise the order is smaller".into()));
        }
        if initial_terms.len() != d {
            return Err(Error::InvalidSpec(format!(
                "expected {d} initial terms, got {}",
                initial_terms.len()
            )));
        }
        let spec = RecurrenceSpec { coefficients, initial_terms };
        let first = spec.terms(2 * d);
        if first.iter().all(|t| *t == first[0]) {
            return Err(Error::InvalidSpec("the sequence is constant".into()));
        }
        Ok(spec)
    }

    pub fn from_i64s(coefficients: &[i64], initial_terms: &[i64]) -> Result<Self> {
        Self::new(
            coefficients.iter().map(|&c| c.into()).collect(),
            initial_terms.iter().map(|&c| c.into()).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn initial_terms(&self) -> &[BigInt] {
        &self.initial_terms
    }

    /// `U_0, ..., U_{count-1}`.
    pub fn terms(&self, count: usize) -> Vec<BigInt> {
        let d = self.order();
        let mut out: Vec<BigInt> = self.initial_terms.iter().take(count).cloned().collect();
        while out.len() < count {
            let n = out.len();
            let next = (1..=d).fold(BigInt::zero(), |acc, i| acc + &self.coefficients[i - 1] * &out[n - i]);
            out.push(next);
        }
        out
    }

    pub fn term(&self, n: usize) -> BigInt {
        let d = self.order();
        if n < d {
            return self.initial_terms[n].clone();
        }
        let mut window: Vec<BigInt> = self.initial_terms.clone();
        for _ in d..=n {
            let next = (1..=d).fold(BigInt::zero(), |acc, i| {
                acc + &self.coefficients[i - 1] * &window[window.len() - i]
            });
            window.remove(0);
            window.push(next);
        }
        window.pop().expect("window is never empty")
    }

    /// `x^d - a_1 x^{d-1} - ... - a_d`.
    pub fn companion_polynomial(&self) -> IntPoly {
        let d = self.order();
        let mut c: Vec<BigInt> = (0..d).map(|i| -&self.coefficients[d - 1 - i]).collect();
        c.push(BigInt::one());
        IntPoly::new(c)
    }

    /// `N(x)` with `U_n = sum_j N(alpha_j) / f'(alpha_j) * alpha_j^n`.
    ///
    /// `N(x) = x^{d-1} P(1/x)` where `P / (1 - a_1 x - ... - a_d x^d)` is the generating function.
    pub fn closed_form_numerator(&self) -> IntPoly {
        let d = self.order();
        let u = &self.initial_terms;
        let p: Vec<BigInt> = (0..d)
            .map(|i| {
                (1..=i).fold(u[i].clone(), |acc, l| acc - &self.coefficients[l - 1] * &u[i - l])
            })
            .collect();
        IntPoly::new(p.into_iter().rev().collect())
    }
}

/// Working precision for spectral analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralConfig {
    pub precision: u32,
    pub ceiling: u32,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig { precision: 128, ceiling: DEFAULT_PRECISION_CEILING }
    }
}

impl SpectralConfig {
    pub fn with_precision(precision: u32) -> Self {
        SpectralConfig { precision, ceiling: DEFAULT_PRECISION_CEILING.max(precision) }
    }

    /// Reads the ceiling from `EFFBOUND_PRECISION_CEILING` when set.
    pub fn from_env(precision: u32) -> Self {
        let ceiling = std::env::var("EFFBOUND_PRECISION_CEILING")
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
            .unwrap_or(DEFAULT_PRECISION_CEILING);
        SpectralConfig { precision, ceiling: ceiling.max(precision) }
    }
}

/// Certified roots, dominant root and closed form of a recurrence.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub polynomial: IntPoly,
    /// Dominant root first, the rest by decreasing modulus.
    pub roots: Vec<RootEnclosure>,
    /// The dominant root (real).
    pub alpha: Interval,
    pub alpha_abs: Interval,
    /// `max_{j >= 2} |alpha_j|`.
    pub alpha2_abs: Interval,
    /// `u, u_2, ..., u_d` aligned with `roots`.
    pub coefficients: Vec<ComplexInterval>,
    pub u: Interval,
    /// `max_j |u_j|` over all `d` coefficients.
    pub u_max: Interval,
    /// Upper bound on the degree of the splitting field.
    pub degree_bound: u64,
    /// Minimal polynomial of `alpha` when it could be certified.
    pub alpha_min_poly: Option<IntPoly>,
    /// `h(|alpha|)`, or an upper bound when the minimal polynomial is unknown.
    pub h_alpha: Interval,
    /// `h(|u|)`, or an upper bound when the minimal polynomial is unknown.
    pub h_u: Interval,
    pub precision: u32,
}

impl SpectralData {
    /// `sum_j u_j alpha_j^n`.
    pub fn closed_form_value(&self, n: u64) -> ComplexInterval {
        let mut acc = ComplexInterval::zero(self.precision);
        for (r, c) in self.roots.iter().zip(&self.coefficients) {
            acc = &acc + &(c * &r.to_complex().powi(n));
        }
        acc
    }

    pub fn u_abs(&self) -> Interval {
        self.u.abs()
    }

    pub fn order(&self) -> usize {
        self.roots.len()
    }
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Orders `m >= 2` a root of unity in a field of degree `<= bound` can have.
fn candidate_orders(bound: u64) -> Vec<u64> {
    // phi(m) >= sqrt(m / 2)
    let limit = 2 * bound * bound;
    (2..=limit.max(2)).filter(|&m| euler_phi(m) <= bound).collect()
}

/// True iff no ratio of two distinct roots of the monic polynomial `f` is a root of unity.
///
/// Pairs whose ratio has modulus certainly different from 1 are cleared numerically. For the
/// others every admissible order `m` is tried: either `(alpha_i/alpha_j)^m - 1` is certified
/// nonzero, or the exact test decides whether `alpha_i^m = alpha_j^m` for some `i != j`, which
/// holds iff the characteristic polynomial of `C_f^m` has a repeated root.
pub fn check_nondegenerate(roots: &[RootEnclosure], f: &IntPoly) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::Domain("check_nondegenerate expects a monic polynomial".into()));
    }
    let d = roots.len();
    let one = Dyadic::one();
    let mut open: Vec<ComplexInterval> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            let zi = roots[i].to_complex();
            let zj = roots[j].to_complex();
            let Some(r) = zi.checked_div(&zj) else {
                return Err(Error::PrecisionExhausted("root enclosure contains zero".into()));
            };
            if r.abs().contains(&one) {
                open.push(r);
            }
        }
    }
    if open.is_empty() {
        return Ok(true);
    }
    let companion = RatMatrix::companion(f);
    let bound = (d * (d - 1)) as u64;
    let one_c = ComplexInterval::one(roots[0].prec);
    for m in candidate_orders(bound) {
        let undecided = open.iter().any(|r| (&r.powi(m) - &one_c).contains_zero());
        if undecided {
            let cp = companion.pow(m).charpoly();
            let g = cp.gcd(&cp.derivative());
            if g.degree() > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn cubic_discriminant(f: &IntPoly) -> BigInt {
    let (a, b, c, d) = (f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0));
    BigInt::from(18) * &a * &b * &c * &d - BigInt::from(4) * &b * &b * &b * &d + &b * &b * &c * &c
        - BigInt::from(4) * &a * &c * &c * &c
        - BigInt::from(27) * &a * &a * &d * &d
}

fn quadratic_discriminant(f: &IntPoly) -> BigInt {
    let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
    &b * &b - BigInt::from(4) * a * c
}

/// Integer roots of a monic polynomial, read off the real root enclosures.
fn integer_roots(f: &IntPoly, roots: &[RootEnclosure]) -> Vec<BigInt> {
    let mut out = Vec::new();
    for r in roots.iter().filter(|r| r.real) {
        let iv = r.to_complex().re;
        let mut n = iv.lo().ceil();
        while Dyadic::from_int(n.clone()) <= *iv.hi() {
            if f.eval(&n).is_zero() && !out.contains(&n) {
                out.push(n.clone());
            }
            n += 1;
        }
    }
    out
}

/// `[Q(alpha_1, ..., alpha_d) : Q]` for `d <= 3`, and `d!` beyond.
pub fn degree_bound(f: &IntPoly, roots: &[RootEnclosure]) -> u64 {
    let d = f.degree();
    match d {
        0 | 1 => 1,
        2 => {
            if is_perfect_square(&quadratic_discriminant(f)) {
                1
            } else {
                2
            }
        }
        3 => {
            if let Some(r) = integer_roots(f, roots).first() {
                let q = f
                    .div_exact(&IntPoly::new(vec![-r.clone(), BigInt::one()]))
                    .expect("integer root divides");
                if is_perfect_square(&quadratic_discriminant(&q)) {
                    1
                } else {
                    2
                }
            } else if is_perfect_square(&cubic_discriminant(f)) {
                3
            } else {
                6
            }
        }
        _ => (1..=d as u64).product(),
    }
}

enum Attempt {
    Done(Box<SpectralData>),
    Refine,
}

/// Certified spectral analysis: simple, non-degenerate, dominant real root `|alpha| > 1`,
/// closed-form coefficients and heights.
pub fn analyze_spectrum(spec: &RecurrenceSpec, config: &SpectralConfig) -> Result<SpectralData> {
    let f = spec.companion_polynomial();
    if !is_squarefree(&f) {
        return Err(Error::NotSimple);
    }
    let roots = isolate_roots(&f, config.precision, config.ceiling)?;
    if !check_nondegenerate(&roots, &f)? {
        return Err(Error::Degenerate);
    }
    let mut prec = config.precision;
    let mut roots = roots;
    loop {
        match attempt(spec, &f, roots, prec)? {
            Attempt::Done(s) => return Ok(*s),
            Attempt::Refine => {
                if prec >= config.ceiling {
                    return Err(Error::PrecisionExhausted(format!(
                        "spectral data of {f} not certified within {} bits",
                        config.ceiling
                    )));
                }
                prec = (prec * 2).min(config.ceiling);
                roots = isolate_roots(&f, prec, config.ceiling)?;
            }
        }
    }
}

fn attempt(spec: &RecurrenceSpec, f: &IntPoly, mut roots: Vec<RootEnclosure>, prec: u32) -> Result<Attempt> {
    let prec = prec.max(roots.iter().map(|r| r.prec).max().unwrap_or(prec));
    let moduli: Vec<Interval> = roots.iter().map(|r| r.modulus()).collect();

    // dominant root: modulus strictly above all others
    let top = (0..roots.len()).find(|&i| {
        (0..roots.len()).all(|j| j == i || moduli[j].certainly_lt(&moduli[i]))
    });
    let Some(top) = top else {
        let best_real = roots
            .iter()
            .zip(&moduli)
            .filter(|(r, _)| r.real)
            .map(|(_, m)| m.hi().clone())
            .max();
        let complex_wins = roots.iter().zip(&moduli).any(|(r, m)| {
            !r.real && best_real.as_ref().is_none_or(|b| m.lo() >= b)
        });
        if complex_wins {
            return Err(Error::NoDominantRoot(
                "the largest modulus is attained by a non-real root and its conjugate".into(),
            ));
        }
        return Ok(Attempt::Refine);
    };
    if !roots[top].real {
        return Err(Error::NoDominantRoot("the largest root is not real".into()));
    }

    let dom = roots.remove(top);
    roots.sort_by(|a, b| b.modulus().mid().cmp(&a.modulus().mid()));
    roots.insert(0, dom);

    let alpha = roots[0].real_interval().expect("real");
    let alpha_abs = alpha.abs();
    let one = Interval::one(prec);
    if !alpha_abs.certainly_gt(&one) {
        if alpha_abs.certainly_lt(&one) {
            return Err(Error::DominantRootNotGreaterThanOne);
        }
        let on_unit = [1i64, -1].iter().any(|&s| alpha.contains_int(&s.into()) && f.eval(&s.into()).is_zero());
        if on_unit {
            return Err(Error::DominantRootNotGreaterThanOne);
        }
        return Ok(Attempt::Refine);
    }
    let alpha2_abs = roots[1..]
        .iter()
        .map(|r| r.modulus())
        .reduce(|a, b| a.max(&b))
        .expect("order >= 2");

    let numer = spec.closed_form_numerator();
    let fprime = f.derivative();
    let mut coefficients = Vec::with_capacity(roots.len());
    for r in &roots {
        let z = r.to_complex();
        let Some(c) = numer.eval_complex(&z).checked_div(&fprime.eval_complex(&z)) else {
            return Ok(Attempt::Refine);
        };
        coefficients.push(c);
    }
    let u = coefficients[0].re.clone();
    let u_max = coefficients
        .iter()
        .map(|c| c.abs())
        .reduce(|a, b| a.max(&b))
        .expect("order >= 2");

    let factor = minimal_factor(f, &roots, 0);
    if u.contains_zero() {
        let g = factor.as_ref().map(|(g, _)| g.clone()).unwrap_or_else(|| f.clone());
        let (_, rem) = numer.to_rat().div_rem(&g.to_rat());
        if rem.is_zero() {
            return Err(Error::ZeroDominantCoefficient);
        }
        return Ok(Attempt::Refine);
    }

    let (h_alpha, h_u, alpha_min_poly) = match &factor {
        Some((g, subset)) => {
            let mods: Vec<Interval> = subset.iter().map(|&i| roots[i].modulus()).collect();
            let h_alpha = height_from_conjugates(&g.lc(), &mods, prec)?;
            let conj_u: Vec<Interval> = subset.iter().map(|&i| coefficients[i].abs()).collect();
            let lc = coefficient_charpoly_lc(&numer, &fprime, g)?;
            let h_u = height_from_conjugates(&lc, &conj_u, prec)?;
            (h_alpha, h_u, Some(g.clone()))
        }
        None => {
            // log M over all conjugates bounds deg(g) * h, hence h itself
            let all: Vec<Interval> = roots.iter().map(|r| r.modulus()).collect();
            let d = Interval::from_int(all.len() as i64, prec);
            let h_alpha = &height_from_conjugates(&BigInt::one(), &all, prec)? * &d;
            let conj_u: Vec<Interval> = coefficients.iter().map(|c| c.abs()).collect();
            let lc = coefficient_charpoly_lc(&numer, &fprime, f)?;
            let h_u = &height_from_conjugates(&lc, &conj_u, prec)? * &d;
            (h_alpha, h_u, None)
        }
    };

    let degree_bound = degree_bound(f, &roots);
    Ok(Attempt::Done(Box::new(SpectralData {
        polynomial: f.clone(),
        roots,
        alpha,
        alpha_abs,
        alpha2_abs,
        coefficients,
        u,
        u_max,
        degree_bound,
        alpha_min_poly,
        h_alpha,
        h_u,
        precision: prec,
    })))
}

/// Leading coefficient of the primitive integer form of `charpoly(N(C_g) f'(C_g)^{-1})`,
/// whose roots are the conjugates `N(beta)/f'(beta)` over the roots `beta` of `g`.
fn coefficient_charpoly_lc(numer: &IntPoly, fprime: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    let monic = g.is_monic();
    if !monic {
        return Err(Error::Domain("factor of a monic polynomial must be monic".into()));
    }
    let c = RatMatrix::companion(g);
    let inv = c
        .eval_poly(fprime)
        .inverse()
        .ok_or_else(|| Error::Domain("f' vanishes at a root; f is not squarefree".into()))?;
    let m = c.eval_poly(numer).mul(&inv);
    let cp: RatPoly = m.charpoly();
    Ok(cp.primitive_integer().lc().abs())
}

/// True iff for every `0 <= n <= n_max` the closed form encloses `U_n` with width below `tol`.
pub fn verify_closed_form(spec: &RecurrenceSpec, spectral: &SpectralData, n_max: u64, tol: f64) -> bool {
    let terms = spec.terms(n_max as usize + 1);
    let tol = Dyadic::from_f64(tol);
    terms.iter().enumerate().all(|(n, exact)| {
        let v = spectral.closed_form_value(n as u64);
        v.re.contains_int(exact) && v.im.contains_zero() && v.width() < tol
    })
}

/// Max residual of the Vandermonde system `sum_j u_j alpha_j^n = U_n`, `n < d`, as an upper bound.
pub fn vandermonde_residual(spec: &RecurrenceSpec, spectral: &SpectralData) -> f64 {
    (0..spec.order())
        .map(|n| {
            let v = spectral.closed_form_value(n as u64);
            let exact = Interval::from_int(spec.initial_terms()[n].clone(), spectral.precision);
            let dr = (&v.re - &exact).abs();
            let di = v.im.abs();
            dr.hi().to_f64().max(di.hi().to_f64())
        })
        .fold(0.0, f64::max)
}

/// `u` and `alpha` as `f64`, for display.
pub fn approx_summary(spectral: &SpectralData) -> (f64, f64) {
    (spectral.alpha.to_f64(), spectral.u.to_f64())
}
