//! TOML instance files.
//!
//! ```toml
//! order = 2
//! coefficients = [1, 1]
//! initial_terms = [0, 1]
//! lambdas = [1, 1]
//! w = 1
//! primes = [2]
//! # optional
//! c2_override = "0.5"
//! precision = 256
//! cap = 200
//! ```
//!
//! Integers may be written as strings when they do not fit in 64 bits.

use effbound::arith::decimal::parse_decimal;
use effbound::arith::Interval;
use effbound::instance::Instance;
use effbound::recurrence::RecurrenceSpec;
use num_bigint::BigInt;
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Int {
    Small(i64),
    Text(String),
}

impl Int {
    fn to_bigint(&self, key: &str) -> Result<BigInt, String> {
        match self {
            Int::Small(v) => Ok((*v).into()),
            Int::Text(s) => s.trim().parse().map_err(|_| format!("{key}: '{s}' is not an integer")),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Decimal {
    Number(f64),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub order: usize,
    pub coefficients: Vec<Int>,
    pub initial_terms: Vec<Int>,
    pub lambdas: Vec<Int>,
    pub w: Int,
    pub primes: Vec<Int>,
    pub c2_override: Option<Decimal>,
    pub precision: Option<u32>,
    pub cap: Option<usize>,
}

fn ints(v: &[Int], key: &str) -> Result<Vec<BigInt>, String> {
    v.iter().map(|x| x.to_bigint(key)).collect()
}

/// Parses a positive decimal such as `0.5` or `1e-3` into an exact enclosure.
pub fn parse_c2(text: &str, prec: u32) -> Result<Interval, String> {
    let r = parse_decimal(text.trim()).ok_or_else(|| format!("c2: '{text}' is not a decimal"))?;
    let x = Interval::from_rational(&r, prec);
    if !x.is_positive() {
        return Err(format!("c2: '{text}' must be positive"));
    }
    Ok(x)
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn load(path: &std::path::Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn spec(&self) -> Result<RecurrenceSpec, String> {
        let a = ints(&self.coefficients, "coefficients")?;
        let u = ints(&self.initial_terms, "initial_terms")?;
        if a.len() != self.order {
            return Err(format!("order is {} but {} coefficients were given", self.order, a.len()));
        }
        if u.len() != self.order {
            return Err(format!("order is {} but {} initial terms were given", self.order, u.len()));
        }
        RecurrenceSpec::new(a, u).map_err(|e| e.to_string())
    }

    pub fn instance(&self) -> Result<Instance, String> {
        let spec = self.spec()?;
        Instance::new(spec, ints(&self.lambdas, "lambdas")?, self.w.to_bigint("w")?, ints(&self.primes, "primes")?)
            .map_err(|e| e.to_string())
    }

    pub fn c2_text(&self) -> Option<String> {
        self.c2_override.as_ref().map(|d| match d {
            Decimal::Number(v) => format!("{v:e}"),
            Decimal::Text(s) => s.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIB: &str = "order = 2\ncoefficients = [1, 1]\ninitial_terms = [0, 1]\nlambdas = [1, 1]\nw = 1\nprimes = [2]\n";

    #[test]
    fn parses_fibonacci() {
        let f = InstanceFile::parse(FIB).unwrap();
        let i = f.instance().unwrap();
        assert_eq!(i.k(), 2);
        assert!(f.c2_override.is_none());
    }

    #[test]
    fn big_integers_as_strings() {
        let text = FIB.replace("w = 1", "w = \"123456789012345678901234567891\"");
        let f = InstanceFile::parse(&text).unwrap();
        assert_eq!(f.instance().unwrap().w().to_string(), "123456789012345678901234567891");
    }

    #[test]
    fn reports_problems() {
        assert!(InstanceFile::parse(&FIB.replace("w = 1\n", "")).is_err());
        assert!(InstanceFile::parse(&format!("{FIB}bogus = 3\n")).is_err());
        let f = InstanceFile::parse(&FIB.replace("order = 2", "order = 3")).unwrap();
        assert!(f.spec().unwrap_err().contains("order is 3"));
        let f = InstanceFile::parse(&FIB.replace("primes = [2]", "primes = [4]")).unwrap();
        assert!(f.instance().is_err());
    }

    #[test]
    fn c2_forms() {
        let f = InstanceFile::parse(&format!("{FIB}c2_override = 0.5\n")).unwrap();
        let x = parse_c2(&f.c2_text().unwrap(), 128).unwrap();
        assert!((x.to_f64() - 0.5).abs() < 1e-30);
        assert!(parse_c2("-1", 128).is_err());
        assert!(parse_c2("abc", 128).is_err());
    }
}
