//! The `effbound` command line.
//!
//! Exit codes: 0 success, 1 `verify` found violations, 2 a hypothesis of the theorem fails,
//! 3 the instance file or arguments are invalid, 4 dominance cannot be certified,
//! 5 the precision ceiling was reached.

pub mod instance_file;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use effbound::bound::{compute_report, BoundConfig, FormulaMode};
use effbound::instance::Instance;
use effbound::recurrence::{analyze_spectrum, SpectralConfig, SpectralData};
use effbound::report::BoundReport;
use effbound::search::{search_with_threads, verify_report, SearchMode};
use effbound::Error;
use serde_json::json;

use instance_file::{parse_c2, InstanceFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_DOMINANCE: i32 = 4;
pub const EXIT_PRECISION: i32 = 5;

pub const DEFAULT_PRECISION: u32 = 256;
pub const DEFAULT_CAP: usize = 200;

#[derive(Parser, Debug)]
#[command(name = "effbound", version, about = "Effective bounds for sums of recurrence terms equal to S-units")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certified spectral data and hypothesis verdicts.
    Analyze(Common),
    /// The full report of constants and the bound on n1 and every z_i.
    Bound(BoundArgs),
    /// All solutions with n1 up to the cap.
    Search(SearchArgs),
    /// Search up to the cap and check every solution against a report.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Instance file (TOML).
    pub file: PathBuf,
    /// Working precision in bits [default: file value, else 256].
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    pub output: Output,
}

#[derive(Args, Debug, Clone)]
pub struct BoundArgs {
    #[command(flatten)]
    pub common: Common,
    /// Use this C_2 (a positive decimal) instead of deriving one.
    #[arg(long)]
    pub c2: Option<String>,
    #[arg(long, value_enum, default_value_t = Mode::Conservative)]
    pub mode: Mode,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[command(flatten)]
    pub common: Common,
    /// Largest n1 to enumerate [default: file value, else 200].
    #[arg(long)]
    pub cap: Option<usize>,
    /// Worker threads [default: available parallelism].
    #[arg(long)]
    pub threads: Option<usize>,
    /// Screen tuples modulo auxiliary primes before factoring.
    #[arg(long)]
    pub sieve: bool,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    /// Report to check (JSON from `bound --output json`); computed afresh when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub c2: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Literal,
    Conservative,
}

impl From<Mode> for FormulaMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Literal => FormulaMode::Literal,
            Mode::Conservative => FormulaMode::Conservative,
        }
    }
}

/// A failed command: exit code and message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { code: EXIT_PARSE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_dominance_failure() {
            EXIT_DOMINANCE
        } else if matches!(e, Error::PrecisionExhausted(_)) {
            EXIT_PRECISION
        } else if matches!(e, Error::InvalidSpec(_) | Error::InvalidInstance(_)) {
            EXIT_PARSE
        } else {
            EXIT_HYPOTHESIS
        };
        Failure { code, message: e.to_string() }
    }
}

struct Loaded {
    file: InstanceFile,
    instance: Instance,
    precision: u32,
}

fn load(common: &Common) -> Result<Loaded, Failure> {
    let file = InstanceFile::load(&common.file).map_err(Failure::parse)?;
    let instance = file.instance().map_err(Failure::parse)?;
    let precision = common.precision.or(file.precision).unwrap_or(DEFAULT_PRECISION);
    if precision < 64 {
        return Err(Failure::parse("precision must be at least 64 bits"));
    }
    Ok(Loaded { file, instance, precision })
}

fn spectrum(l: &Loaded) -> Result<SpectralData, Failure> {
    Ok(analyze_spectrum(l.instance.spec(), &SpectralConfig::from_env(l.precision))?)
}

fn c2_for(l: &Loaded, flag: &Option<String>) -> Result<Option<effbound::arith::Interval>, Failure> {
    let text = flag.clone().or_else(|| l.file.c2_text());
    text.map(|t| parse_c2(&t, l.precision).map_err(Failure::parse)).transpose()
}

fn analyze(common: &Common, out: &mut dyn Write) -> Result<i32, Failure> {
    let l = load(common)?;
    let sig = 30;
    let sp = match spectrum(&l) {
        Ok(sp) => sp,
        Err(f) if f.code == EXIT_HYPOTHESIS => {
            let verdict = f.message.split(':').next().unwrap_or("").to_string();
            match common.output {
                Output::Json => writeln!(out, "{}", json!({"ok": false, "failed": verdict, "message": f.message})),
                Output::Text => writeln!(out, "hypotheses: FAILED ({verdict})"),
            }
            .ok();
            return Err(f);
        }
        Err(f) => return Err(f),
    };
    let coeffs: Vec<serde_json::Value> = sp
        .coefficients
        .iter()
        .zip(&sp.roots)
        .map(|(c, r)| {
            let z = r.to_complex();
            json!({
                "root_re": z.re.format(sig),
                "root_im": z.im.format(sig),
                "root_modulus": r.modulus().format(sig),
                "coefficient_re": c.re.format(sig),
                "coefficient_im": c.im.format(sig),
            })
        })
        .collect();
    let verdicts = json!({
        "simple": true,
        "non_degenerate": true,
        "dominant_root": true,
        "alpha_greater_than_one": true,
    });
    match common.output {
        Output::Json => {
            let doc = json!({
                "ok": true,
                "polynomial": sp.polynomial.to_string(),
                "precision": sp.precision,
                "alpha": sp.alpha.format(sig),
                "alpha2_modulus": sp.alpha2_abs.format(sig),
                "u": sp.u.format(sig),
                "u_max": sp.u_max.format(sig),
                "degree_bound": sp.degree_bound,
                "h_alpha": sp.h_alpha.format(sig),
                "h_u": sp.h_u.format(sig),
                "roots": coeffs,
                "verdicts": verdicts,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).ok();
        }
        Output::Text => {
            let mut s = String::new();
            s += &format!("polynomial: {}\n", sp.polynomial);
            s += &format!("precision: {} bits\n", sp.precision);
            s += &format!("alpha = {}\n", sp.alpha.format(sig));
            s += &format!("|alpha_2| = {}\n", sp.alpha2_abs.format(sig));
            s += &format!("u = {}\n", sp.u.format(sig));
            s += &format!("u_max = {}\n", sp.u_max.format(sig));
            s += &format!("D = {}\n", sp.degree_bound);
            s += &format!("h(|alpha|) = {}\n", sp.h_alpha.format(sig));
            s += &format!("h(|u|) = {}\n", sp.h_u.format(sig));
            for (i, c) in coeffs.iter().enumerate() {
                s += &format!(
                    "root {}: {} + {} i, |root| = {}, coefficient {} + {} i\n",
                    i + 1,
                    c["root_re"].as_str().unwrap(),
                    c["root_im"].as_str().unwrap(),
                    c["root_modulus"].as_str().unwrap(),
                    c["coefficient_re"].as_str().unwrap(),
                    c["coefficient_im"].as_str().unwrap()
                );
            }
            s += "hypotheses: simple ok, non-degenerate ok, dominant root ok, |alpha| > 1 ok\n";
            write!(out, "{s}").ok();
        }
    }
    Ok(EXIT_OK)
}

fn build_report(l: &Loaded, sp: &SpectralData, c2: &Option<String>, mode: Mode) -> Result<BoundReport, Failure> {
    let c2 = c2_for(l, c2)?;
    let config = BoundConfig { mode: mode.into(), degree_override: None };
    Ok(compute_report(&l.instance, sp, c2.as_ref(), &config)?)
}

fn bound(args: &BoundArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let l = load(&args.common)?;
    let sp = spectrum(&l)?;
    let report = build_report(&l, &sp, &args.c2, args.mode)?;
    match args.common.output {
        Output::Json => writeln!(out, "{}", report.to_json()),
        Output::Text => write!(out, "{}", report.to_text()),
    }
    .ok();
    Ok(EXIT_OK)
}

fn threads(t: Option<usize>) -> usize {
    t.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn search_cmd(args: &SearchArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let l = load(&args.common)?;
    let cap = args.cap.or(l.file.cap).unwrap_or(DEFAULT_CAP);
    let mode = if args.sieve { SearchMode::Sieve } else { SearchMode::Exact };
    let result = search_with_threads(&l.instance, cap, mode, threads(args.threads))?;
    match args.common.output {
        Output::Json => writeln!(out, "{}", result.to_json()),
        Output::Text => write!(out, "{}", result.to_text()),
    }
    .ok();
    Ok(EXIT_OK)
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let common = &args.search.common;
    let l = load(common)?;
    let sp = spectrum(&l)?;
    let report = match &args.report {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
            BoundReport::from_json(&text).map_err(|e| Failure::parse(e.to_string()))?
        }
        None => build_report(&l, &sp, &args.c2, Mode::Conservative)?,
    };
    let cap = args.search.cap.or(l.file.cap).unwrap_or(DEFAULT_CAP);
    let mode = if args.search.sieve { SearchMode::Sieve } else { SearchMode::Exact };
    let result = search_with_threads(&l.instance, cap, mode, threads(args.search.threads))?;
    let outcome = verify_report(&l.instance, &sp, &report, &result)?;
    match common.output {
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&outcome).expect("json")),
        Output::Text => {
            let mut s = format!(
                "checked {} solutions with n1 <= {} ({} flagged with n1 < 3) against n1_bound = {}\n",
                outcome.checked, outcome.cap, outcome.flagged, report.n1_bound
            );
            for v in &outcome.violations {
                s += &format!("VIOLATION {}: {}\n", v.solution.to_line(), v.reason);
            }
            s += if outcome.passed() { "result: pass\n" } else { "result: FAIL\n" };
            write!(out, "{s}")
        }
    }
    .ok();
    Ok(if outcome.passed() { EXIT_OK } else { EXIT_VIOLATIONS })
}

/// Runs a parsed command, writing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Analyze(c) => analyze(c, out),
        Command::Bound(b) => bound(b, out),
        Command::Search(s) => search_cmd(s, out),
        Command::Verify(v) => verify(v, out),
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
