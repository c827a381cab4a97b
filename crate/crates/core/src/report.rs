//! Serializable record of every constant behind a bound.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::decimal::{format_sig, parse_decimal};
use crate::arith::Interval;
use crate::bound::FormulaMode;
use crate::dominance::DominanceCertificate;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::recurrence::SpectralData;

/// Significant digits for every value in a report.
pub const SIG_DIGITS: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub name: String,
    /// Midpoint of the enclosure.
    pub value: String,
    /// Upper endpoint, rounded up in the last digit shown.
    pub upper: String,
    pub enclosure_width: String,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub polynomial: String,
    pub initial_terms: Vec<String>,
    pub lambdas: Vec<String>,
    pub w: String,
    pub primes: Vec<String>,
    pub precision: u32,
    pub mode: String,
    pub degree_bound: u64,
    pub dominance_method: String,
    pub dominance_threshold_n0: usize,
    pub dominance_window: usize,
    pub dominance_caveat: Option<String>,
    pub entries: Vec<ReportEntry>,
    pub n1_bound: String,
    pub z_bounds: Vec<String>,
    pub notes: Vec<String>,
}

/// Upward-safe decimal for the upper endpoint: one unit in the last place is added.
fn upper_string(x: &Interval) -> String {
    let s = format_sig(x.hi(), SIG_DIGITS);
    match parse_decimal(&s) {
        Some(v) if v >= dyadic_rational(x) => s,
        _ => format_sig(&x.hi().add(&x.hi().abs().ldexp(-((SIG_DIGITS as i64) * 3))), SIG_DIGITS),
    }
}

fn dyadic_rational(x: &Interval) -> BigRational {
    let d = x.hi();
    let m = d.mantissa().clone();
    let e = d.exponent();
    if e >= 0 {
        BigRational::from_integer(m << e as usize)
    } else {
        BigRational::new(m, BigInt::from(1) << (-e) as usize)
    }
}

pub(crate) struct ReportBuilder {
    report: BoundReport,
}

impl ReportBuilder {
    pub(crate) fn new(
        instance: &Instance,
        spectral: &SpectralData,
        cert: &DominanceCertificate,
        mode: FormulaMode,
        degree: u64,
    ) -> Self {
        let strs = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        ReportBuilder {
            report: BoundReport {
                polynomial: spectral.polynomial.to_string(),
                initial_terms: strs(instance.spec().initial_terms()),
                lambdas: strs(instance.lambdas()),
                w: instance.w().to_string(),
                primes: strs(instance.primes()),
                precision: spectral.precision,
                mode: mode.label().to_string(),
                degree_bound: degree,
                dominance_method: cert.method.label().to_string(),
                dominance_threshold_n0: cert.threshold_n0,
                dominance_window: cert.window_checked,
                dominance_caveat: cert.caveat.clone(),
                entries: Vec::new(),
                n1_bound: String::new(),
                z_bounds: Vec::new(),
                notes: Vec::new(),
            },
        }
    }

    pub(crate) fn push(&mut self, name: &str, x: &Interval, provenance: &str) {
        self.report.entries.push(ReportEntry {
            name: name.to_string(),
            value: x.format(SIG_DIGITS),
            upper: upper_string(x),
            enclosure_width: format_sig(&x.width(), 6),
            provenance: provenance.to_string(),
        });
    }

    pub(crate) fn note(&mut self, s: String) {
        self.report.notes.push(s);
    }

    pub(crate) fn finish(mut self, n1_bound: BigInt, z_bounds: Vec<BigInt>) -> BoundReport {
        self.report.n1_bound = n1_bound.to_string();
        self.report.z_bounds = z_bounds.iter().map(|z| z.to_string()).collect();
        self.report
    }
}

impl BoundReport {
    pub fn entry(&self, name: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Upper endpoint of a named constant, exactly as written.
    pub fn upper(&self, name: &str) -> Option<BigRational> {
        self.entry(name).and_then(|e| parse_decimal(&e.upper))
    }

    pub fn n1_bound(&self) -> BigInt {
        self.n1_bound.parse().expect("n1_bound is an integer")
    }

    pub fn z_bounds(&self) -> Vec<BigInt> {
        self.z_bounds.iter().map(|z| z.parse().expect("z bound is an integer")).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: BoundReport =
            serde_json::from_str(s).map_err(|e| Error::InvalidInstance(format!("bad report: {e}")))?;
        if r.n1_bound.parse::<BigInt>().is_err() || r.z_bounds.iter().any(|z| z.parse::<BigInt>().is_err()) {
            return Err(Error::InvalidInstance("bad report: bounds must be integers".into()));
        }
        Ok(r)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "recurrence: {} with U_0.. = ({})", self.polynomial, self.initial_terms.join(", "));
        let _ = writeln!(
            out,
            "equation: lambdas = ({}), w = {}, primes = ({})",
            self.lambdas.join(", "),
            self.w,
            self.primes.join(", ")
        );
        let _ = writeln!(out, "precision: {} bits, mode: {}, D = {}", self.precision, self.mode, self.degree_bound);
        let _ = writeln!(
            out,
            "dominance: {} (n0 = {}, checked n1 <= {})",
            self.dominance_method, self.dominance_threshold_n0, self.dominance_window
        );
        if let Some(c) = &self.dominance_caveat {
            let _ = writeln!(out, "caveat: {c}");
        }
        let width = self.entries.iter().map(|e| e.name.chars().count()).max().unwrap_or(0);
        for e in &self.entries {
            let pad = width - e.name.chars().count();
            let _ = writeln!(
                out,
                "{}{} = {}  upper {}  width {}  [{}]",
                e.name,
                " ".repeat(pad),
                e.value,
                e.upper,
                e.enclosure_width,
                e.provenance
            );
        }
        let _ = writeln!(out, "n1_bound = {}", self.n1_bound);
        for (p, z) in self.primes.iter().zip(&self.z_bounds) {
            let _ = writeln!(out, "z_bound[p={p}] = {z}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_string_is_not_below_hi() {
        for v in [1.0 / 3.0, 2f64.sqrt(), 1e40 / 7.0, 0.1] {
            let x = Interval::from_f64(v, 256);
            let s = upper_string(&x);
            assert!(parse_decimal(&s).unwrap() >= dyadic_rational(&x), "{s}");
        }
        let third = Interval::from_ratio(&1.into(), &3.into(), 256);
        let s = upper_string(&third);
        assert!(parse_decimal(&s).unwrap() >= dyadic_rational(&third));
    }
}
