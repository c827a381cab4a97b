//! Certified isolation of all complex roots of a squarefree integer polynomial.
//!
//! Approximations come from Weierstrass (Durand-Kerner) iteration; they are
//! certified with inclusion disks `|z - z_i| <= n |W_i|` where `W_i` is the
//! Weierstrass correction. When the disks are pairwise disjoint each one holds
//! exactly one root. A disk whose center lies on the real axis therefore holds
//! a real root, since a non-real root would bring its conjugate along.

use num_complex::Complex64;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{ComplexInterval, Dyadic, Interval, Round};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// A disk `|z - center| <= radius` known to contain exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnclosure {
    pub center_re: Dyadic,
    pub center_im: Dyadic,
    pub radius: Dyadic,
    /// The enclosed root is certified real (center on the axis).
    pub real: bool,
    pub prec: u32,
}

impl RootEnclosure {
    /// Axis-aligned box around the disk; the imaginary part is exactly zero for real roots.
    pub fn to_complex(&self) -> ComplexInterval {
        let re = Interval::new(
            self.center_re.sub(&self.radius),
            self.center_re.add(&self.radius),
            self.prec,
        );
        let im = if self.real {
            Interval::zero(self.prec)
        } else {
            Interval::new(
                self.center_im.sub(&self.radius),
                self.center_im.add(&self.radius),
                self.prec,
            )
        };
        ComplexInterval::new(re, im)
    }

    pub fn real_interval(&self) -> Option<Interval> {
        self.real.then(|| self.to_complex().re)
    }

    pub fn modulus(&self) -> Interval {
        if self.real {
            return self.to_complex().re.abs();
        }
        let c = ComplexInterval::point(self.center_re.clone(), self.center_im.clone(), self.prec);
        let m = c.abs();
        let r = Interval::point(self.radius.clone(), self.prec);
        let lo = (&m - &r).lo().max_of(&Dyadic::zero());
        Interval::new(lo, (&m + &r).hi().clone(), self.prec)
    }

    pub fn approx(&self) -> Complex64 {
        Complex64::new(self.center_re.to_f64(), self.center_im.to_f64())
    }
}

type Point = (Dyadic, Dyadic);

fn cauchy_bound(f: &IntPoly) -> f64 {
    let lc = f.lc().to_f64().unwrap_or(f64::MAX).abs();
    let m = f.coeffs()[..f.degree()]
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::MAX).abs() / lc)
        .fold(0.0, f64::max);
    1.0 + m
}

fn initial_points(n: usize, radius: f64) -> Vec<Complex64> {
    let w = Complex64::new(0.4, 0.9);
    (0..n).map(|k| w.powu(k as u32) * radius).collect()
}

/// Durand-Kerner in `f64`; returns `None` when the polynomial does not fit comfortably.
fn seed_f64(f: &IntPoly) -> Option<Vec<Complex64>> {
    let n = f.degree();
    let coeffs: Vec<f64> = f.coeffs().iter().map(|c| c.to_f64()).collect::<Option<_>>()?;
    if coeffs.iter().any(|c| !c.is_finite() || c.abs() > 1e150) {
        return None;
    }
    let lc = coeffs[n];
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c);
    let mut z = initial_points(n, cauchy_bound(f).min(1e100));
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let mut denom = Complex64::new(lc, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                z[i] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let step = eval(z[i]) / denom;
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z.iter().all(|c| c.is_finite()).then_some(z)
}

fn to_interval(p: &Point, prec: u32) -> ComplexInterval {
    ComplexInterval::point(p.0.clone(), p.1.clone(), prec)
}

/// Weierstrass correction `f(z_i) / (lc * prod_{j != i} (z_i - z_j))` as an enclosure.
fn correction(f: &IntPoly, z: &[Point], i: usize, prec: u32) -> Option<ComplexInterval> {
    let zi = to_interval(&z[i], prec);
    let mut denom = ComplexInterval::real(Interval::from_int(f.lc(), prec));
    for (j, zj) in z.iter().enumerate() {
        if j != i {
            denom = &denom * &(&zi - &to_interval(zj, prec));
        }
    }
    f.eval_complex(&zi).checked_div(&denom)
}

fn round_point(re: Dyadic, im: Dyadic, prec: u32) -> Point {
    // round-to-nearest is not needed; any nearby point is a valid iterate
    (re.round(prec, Round::Down), im.round(prec, Round::Down))
}

fn refine_dk(f: &IntPoly, z: &mut [Point], prec: u32) {
    let n = z.len();
    let max_iter = 200 + 20 * n;
    let tiny = Dyadic::one().ldexp(-(prec as i64) + 12);
    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..n {
            match correction(f, z, i, prec) {
                Some(w) => {
                    let (wr, wi) = w.mid();
                    let new_re = z[i].0.sub(&wr);
                    let new_im = z[i].1.sub(&wi);
                    let scale = Dyadic::one().add(&new_re.abs()).add(&new_im.abs());
                    if wr.abs().add(&wi.abs()) > tiny.mul(&scale) {
                        converged = false;
                    }
                    z[i] = round_point(new_re, new_im, prec + 8);
                }
                None => {
                    converged = false;
                    let bump = Dyadic::one().ldexp(-(prec as i64 / 2));
                    z[i] = (z[i].0.add(&bump), z[i].1.add(&bump));
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Inclusion radii `n |W_i|`, rounded up.
fn radii(f: &IntPoly, z: &[Point], prec: u32) -> Option<Vec<Dyadic>> {
    let n = Interval::from_int(z.len() as i64, prec);
    (0..z.len())
        .map(|i| {
            let w = correction(f, z, i, prec)?;
            Some((&w.abs() * &n).hi().round(64, Round::Up))
        })
        .collect()
}

fn disks_disjoint(z: &[Point], r: &[Dyadic]) -> bool {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let dr = z[i].0.sub(&z[j].0);
            let di = z[i].1.sub(&z[j].1);
            let d2 = dr.mul(&dr).add(&di.mul(&di));
            let s = r[i].add(&r[j]);
            if d2 <= s.mul(&s) {
                return false;
            }
        }
    }
    true
}

fn certify(f: &IntPoly, z: &mut [Point], prec: u32) -> Option<Vec<RootEnclosure>> {
    let mut r = radii(f, z, prec)?;
    let mut snapped = vec![false; z.len()];
    for i in 0..z.len() {
        if z[i].1.abs() <= r[i] {
            z[i].1 = Dyadic::zero();
            snapped[i] = true;
        }
    }
    if snapped.iter().any(|&s| s) {
        r = radii(f, z, prec)?;
    }
    if !disks_disjoint(z, &r) {
        return None;
    }
    // a disk off the axis must not touch it, otherwise realness is undecided
    for i in 0..z.len() {
        if !snapped[i] && z[i].1.abs() <= r[i] {
            return None;
        }
    }
    Some(
        z.iter()
            .zip(r)
            .zip(snapped)
            .map(|((p, radius), real)| RootEnclosure {
                center_re: p.0.clone(),
                center_im: p.1.clone(),
                radius,
                real,
                prec,
            })
            .collect(),
    )
}

/// Isolate every root of a squarefree polynomial, starting at `prec` bits and doubling
/// up to `ceiling` until all inclusion disks are disjoint.
pub fn isolate_roots(f: &IntPoly, prec: u32, ceiling: u32) -> Result<Vec<RootEnclosure>> {
    let n = f.degree();
    if f.is_zero() || n == 0 {
        return Ok(Vec::new());
    }
    let seeds = seed_f64(f).unwrap_or_else(|| initial_points(n, cauchy_bound(f).min(1e300)));
    let mut z: Vec<Point> = seeds
        .iter()
        .map(|c| (Dyadic::from_f64(c.re), Dyadic::from_f64(c.im)))
        .collect();
    let mut p = prec.max(64);
    loop {
        refine_dk(f, &mut z, p);
        if let Some(roots) = certify(f, &mut z.clone(), p) {
            return Ok(roots);
        }
        if p >= ceiling {
            return Err(Error::PrecisionExhausted(format!(
                "could not isolate the roots of {f} within {ceiling} bits"
            )));
        }
        p = (p * 2).min(ceiling);
    }
}

/// Default upper limit for adaptive precision.
pub const DEFAULT_PRECISION_CEILING: u32 = 8192;

/// Subsets are only searched up to this degree.
pub const MAX_FACTOR_DEGREE: usize = 12;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            small.push(BigInt::from(i));
            if i * i != n {
                large.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// The unique integer inside a narrow interval, `Err` when the interval is too wide to tell.
fn unique_int(x: &Interval) -> std::result::Result<Option<BigInt>, ()> {
    if x.width() >= Dyadic::one() {
        return Err(());
    }
    let c = x.lo().ceil();
    Ok(x.contains_int(&c).then_some(c))
}

/// Product `c * prod_{i in subset} (x - root_i)` if it has integer coefficients.
fn subset_product(
    roots: &[RootEnclosure],
    subset: &[usize],
    c: &BigInt,
    prec: u32,
) -> std::result::Result<Option<IntPoly>, ()> {
    let mut coeffs = vec![ComplexInterval::real(Interval::from_int(c.clone(), prec))];
    for &i in subset {
        let r = roots[i].to_complex();
        let mut next = vec![ComplexInterval::zero(prec); coeffs.len() + 1];
        for (k, ck) in coeffs.iter().enumerate() {
            next[k + 1] = &next[k + 1] + ck;
            next[k] = &next[k] - &(ck * &r);
        }
        coeffs = next;
    }
    let mut ints = Vec::with_capacity(coeffs.len());
    for ck in &coeffs {
        if !ck.im.contains_zero() {
            return Ok(None);
        }
        if ck.im.width() >= Dyadic::one() {
            return Err(());
        }
        match unique_int(&ck.re)? {
            Some(v) => ints.push(v),
            None => return Ok(None),
        }
    }
    Ok(Some(IntPoly::new(ints)))
}

/// All `k`-subsets of `0..n` that contain `must`, in lexicographic order.
fn combinations(n: usize, k: usize, must: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(n: usize, k: usize, start: usize, must: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            if cur.contains(&must) {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, must, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, must, &mut Vec::new(), out);
}

/// Smallest integer factor of `f` vanishing at `roots[idx]`, with the subset of roots it carries.
///
/// Returns `None` when `deg f` exceeds [`MAX_FACTOR_DEGREE`], the leading coefficient is too
/// large to enumerate its divisors, or an enclosure is too wide to read off integers.
pub fn minimal_factor(
    f: &IntPoly,
    roots: &[RootEnclosure],
    idx: usize,
) -> Option<(IntPoly, Vec<usize>)> {
    let n = f.degree();
    if n == 0 || n > MAX_FACTOR_DEGREE || roots.len() != n {
        return None;
    }
    let divs = divisors(&f.lc())?;
    let prec = roots.iter().map(|r| r.prec).max().unwrap_or(128);
    for k in 1..=n {
        let mut subsets = Vec::new();
        combinations(n, k, idx, &mut subsets);
        for s in &subsets {
            for c in &divs {
                match subset_product(roots, s, c, prec) {
                    Err(()) => return None,
                    Ok(Some(g)) => {
                        if f.div_exact(&g).is_some() {
                            return Some((g, s.clone()));
                        }
                    }
                    Ok(None) => {}
                }
            }
        }
    }
    None
}
