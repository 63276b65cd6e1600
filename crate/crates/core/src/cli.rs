//! Command-line front end: `indefinite`, `definite` and `check`.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or parse error,
//! 3 domain error, 4 cross-check tolerance breach.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::airy::{eval_airy_basis, SolutionSpec};
use crate::error::Error;
use crate::quadrature::{integrate_adaptive, integrate_improper};
use crate::reduction::{
    antider_poly, differentiate_back_check, verify_hvt, Operator, ReductionRequest,
};
use crate::symbolic::{integer, parse_rational, rational, BilinearForm, FormRecord, Pattern, RationalPolynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CROSSCHECK: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "airy-integrals",
    version,
    about = "Closed-form integrals of products of Airy functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the exact antiderivative of f(x) * pattern.
    #[command(allow_negative_numbers = true)]
    Indefinite {
        #[command(flatten)]
        query: QueryArgs,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the closed form between two limits.
    #[command(allow_negative_numbers = true)]
    Definite {
        #[command(flatten)]
        query: QueryArgs,
        /// Amplitudes c1,c2 of the first solution c1 Ai(x+a) + c2 Bi(x+a).
        #[arg(long, default_value = "1,0", allow_hyphen_values = true, value_parser = parse_amplitudes)]
        sol1: (f64, f64),
        /// Amplitudes c1,c2 of the second solution c1 Ai(x+b) + c2 Bi(x+b).
        #[arg(long, default_value = "1,0", allow_hyphen_values = true, value_parser = parse_amplitudes)]
        sol2: (f64, f64),
        #[arg(long)]
        from: f64,
        /// Upper limit; "inf" is allowed for solutions without a Bi part.
        #[arg(long, value_parser = parse_limit)]
        to: f64,
        /// Cross-check the closed form against adaptive quadrature.
        #[arg(long)]
        check: bool,
        /// Cross-check tolerance, applied as tol * (1 + |value|).
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Run one of the built-in verification suites.
    #[command(allow_negative_numbers = true)]
    Check {
        suite: Suite,
        /// Highest power for the roundtrip suite.
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Interval for the hvt suite.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [-3.0, 2.0])]
        interval: Vec<f64>,
        /// Pass threshold (default 1e-8 for hvt, 1e-12 for wronskian).
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Hvt,
    Roundtrip,
    Wronskian,
}

#[derive(Debug, Args)]
struct QueryArgs {
    #[command(flatten)]
    weight: WeightArgs,
    #[arg(long, value_parser = parse_pattern)]
    pattern: Pattern,
    /// Exact shift (eigenvalue) of A, e.g. 0, -3/2, 0.25.
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_exact)]
    a: BigRational,
    /// Exact shift (eigenvalue) of B.
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_exact)]
    b: BigRational,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct WeightArgs {
    /// Weight polynomial as ascending exact coefficients: "0,1,1/2" = x + x^2/2.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_poly)]
    poly: Option<RationalPolynomial>,
    /// Monomial weight x^n.
    #[arg(long)]
    n: Option<usize>,
}

impl WeightArgs {
    fn polynomial(&self) -> RationalPolynomial {
        match (&self.poly, self.n) {
            (Some(p), _) => p.clone(),
            (None, Some(n)) => RationalPolynomial::monomial(integer(1), n),
            (None, None) => RationalPolynomial::zero(),
        }
    }
}

impl QueryArgs {
    fn request(&self) -> ReductionRequest {
        ReductionRequest::new(self.weight.polynomial(), self.pattern, self.a.clone(), self.b.clone())
    }
}

fn parse_pattern(s: &str) -> Result<Pattern, String> {
    s.parse()
}

fn parse_exact(s: &str) -> Result<BigRational, String> {
    parse_rational(s).ok_or_else(|| format!("'{s}' is not an exact rational"))
}

fn parse_poly(s: &str) -> Result<RationalPolynomial, String> {
    s.split(',')
        .map(parse_exact)
        .collect::<Result<Vec<_>, _>>()
        .map(RationalPolynomial::from_coeffs)
}

fn parse_amplitudes(s: &str) -> Result<(f64, f64), String> {
    let (c1, c2) = s
        .split_once(',')
        .ok_or_else(|| format!("expected c1,c2 but got '{s}'"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("'{t}' is not a finite number"))
    };
    Ok((parse(c1)?, parse(c2)?))
}

fn parse_limit(s: &str) -> Result<f64, String> {
    match s.trim() {
        "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
        t => t
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("'{t}' is not a finite number or 'inf'")),
    }
}

/// Formats a float with 17 significant digits.
pub fn format_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_string()
    }
}

/// JSON payload of `definite`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefiniteRecord {
    pub value: f64,
    pub crosscheck: Option<f64>,
    pub abs_diff: Option<f64>,
}

impl DefiniteRecord {
    /// Renders with a fixed key order and 17 significant digits.
    pub fn to_json(&self) -> String {
        let opt = |v: Option<f64>| v.map_or_else(|| "null".to_string(), format_number);
        format!(
            "{{\"value\":{},\"crosscheck\":{},\"abs_diff\":{}}}",
            format_number(self.value),
            opt(self.crosscheck),
            opt(self.abs_diff)
        )
    }
}

/// Canonical JSON of a closed form.
pub fn form_to_json(form: &BilinearForm) -> String {
    serde_json::to_string(&FormRecord::from(form)).expect("form record serializes")
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    let mut text = String::new();
    let result = match cli.command {
        Command::Indefinite { query, json } => indefinite(&query, json, &mut text),
        Command::Definite {
            query,
            sol1,
            sol2,
            from,
            to,
            check,
            tol,
            json,
        } => definite(&query, sol1, sol2, from, to, check.then_some(tol), json, &mut text),
        Command::Check {
            suite,
            max_n,
            interval,
            tol,
        } => run_check(suite, max_n, (interval[0], interval[1]), tol, &mut text),
    };
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn indefinite(query: &QueryArgs, json: bool, out: &mut String) -> Result<i32, Failure> {
    let req = query.request();
    let form = antider_poly(&req);
    if json {
        let _ = writeln!(out, "{}", form_to_json(&form));
    } else {
        let _ = writeln!(out, "a = {}, b = {}", form.shift_a(), form.shift_b());
        let _ = writeln!(out, "integral of ({})*{} dx =", req.f, req.pattern);
        let _ = writeln!(out, "  {form}");
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn definite(
    query: &QueryArgs,
    sol1: (f64, f64),
    sol2: (f64, f64),
    from: f64,
    to: f64,
    check_tol: Option<f64>,
    json: bool,
    out: &mut String,
) -> Result<i32, Failure> {
    let req = query.request();
    let spec_a = SolutionSpec::new(sol1.0, sol1.1, req.shift_a.clone())?;
    let spec_b = SolutionSpec::new(sol2.0, sol2.1, req.shift_b.clone())?;
    let form = antider_poly(&req).to_numeric(&spec_a, &spec_b)?;

    let value = if to.is_infinite() {
        if !(spec_a.is_pure_ai() && spec_b.is_pure_ai()) {
            return Err(Error::DivergentIntegrand.into());
        }
        -form.eval(from)?
    } else {
        form.definite(from, to)?
    };

    let mut record = DefiniteRecord {
        value,
        crosscheck: None,
        abs_diff: None,
    };
    let mut code = EXIT_OK;
    if let Some(tol) = check_tol {
        let integrand = req.integrand().to_numeric(&spec_a, &spec_b)?;
        let mut f = |x: f64| integrand.eval(x).unwrap_or(f64::NAN);
        let qtol = tol * 1e-2;
        let crosscheck = if to.is_infinite() {
            integrate_improper(&mut f, from, qtol, [&spec_a, &spec_b])?.value
        } else if from <= to {
            integrate_adaptive(&mut f, from, to, qtol)?.value
        } else {
            -integrate_adaptive(&mut f, to, from, qtol)?.value
        };
        let diff = (value - crosscheck).abs();
        record.crosscheck = Some(crosscheck);
        record.abs_diff = Some(diff);
        if diff.is_nan() || diff > tol * (1.0 + value.abs()) {
            code = EXIT_CROSSCHECK;
        }
    }

    if json {
        let _ = writeln!(out, "{}", record.to_json());
    } else {
        let _ = writeln!(out, "value      = {}", format_number(record.value));
        if let (Some(c), Some(d)) = (record.crosscheck, record.abs_diff) {
            let _ = writeln!(out, "crosscheck = {}", format_number(c));
            let _ = writeln!(out, "abs_diff   = {}", format_number(d));
        }
    }
    Ok(code)
}

fn run_check(
    suite: Suite,
    max_n: usize,
    interval: (f64, f64),
    tol: Option<f64>,
    out: &mut String,
) -> Result<i32, Failure> {
    let failures = match suite {
        Suite::Roundtrip => check_roundtrip(max_n, out),
        Suite::Wronskian => check_wronskian(tol.unwrap_or(1e-12), out)?,
        Suite::Hvt => check_hvt(interval, tol.unwrap_or(1e-8), out)?,
    };
    if failures == 0 {
        let _ = writeln!(out, "all cases passed");
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(out, "{failures} case(s) failed");
        Ok(EXIT_CHECK_FAILED)
    }
}

/// Shift pairs covered by the roundtrip suite.
pub fn roundtrip_shift_pairs() -> Vec<(BigRational, BigRational)> {
    vec![
        (integer(0), integer(0)),
        (integer(1), integer(1)),
        (rational(-3, 2), rational(-3, 2)),
        (integer(0), integer(1)),
        (integer(-2), rational(3, 2)),
        (rational(1, 3), rational(-1, 3)),
    ]
}

fn check_roundtrip(max_n: usize, out: &mut String) -> usize {
    let mut failures = 0;
    for (a, b) in roundtrip_shift_pairs() {
        for pattern in Pattern::ALL {
            for n in 0..=max_n {
                let f = RationalPolynomial::monomial(integer(1), n);
                let req = ReductionRequest::new(f.clone(), pattern, a.clone(), b.clone());
                let ok = differentiate_back_check(&antider_poly(&req), &f, pattern);
                failures += usize::from(!ok);
                let _ = writeln!(
                    out,
                    "roundtrip {pattern:<4} a={a:<5} b={b:<5} n={n:<3} {}",
                    if ok { "exact" } else { "FAIL" }
                );
            }
        }
    }
    failures
}

fn check_wronskian(tol: f64, out: &mut String) -> Result<usize, Failure> {
    let mut failures = 0;
    for i in 0..151 {
        let x = -10.0 + 0.1 * f64::from(i);
        let w = eval_airy_basis(x)?.wronskian();
        let residual = (w - std::f64::consts::FRAC_1_PI).abs();
        let ok = residual <= tol;
        failures += usize::from(!ok);
        let _ = writeln!(
            out,
            "wronskian x={x:>6.2} W={} |W-1/pi|={residual:.3e} {}",
            format_number(w),
            if ok { "ok" } else { "FAIL" }
        );
    }
    Ok(failures)
}

/// Operators exercised by the hvt suite, with display names.
pub fn hvt_operators() -> Vec<(&'static str, Operator)> {
    vec![
        ("1", Operator::MultiplyBy(RationalPolynomial::one())),
        ("x^2", Operator::MultiplyBy(RationalPolynomial::from_i64(&[0, 0, 1]))),
        ("x^3", Operator::MultiplyBy(RationalPolynomial::from_i64(&[0, 0, 0, 1]))),
        ("x*D", Operator::PolyTimesD(RationalPolynomial::x())),
        ("x^2*D", Operator::PolyTimesD(RationalPolynomial::from_i64(&[0, 0, 1]))),
    ]
}

fn check_hvt(interval: (f64, f64), tol: f64, out: &mut String) -> Result<usize, Failure> {
    let spec_a = SolutionSpec::ai(integer(0));
    let spec_b = SolutionSpec::ai(integer(1));
    let mut failures = 0;
    for (name, op) in hvt_operators() {
        let r = verify_hvt(&op, &spec_a, &spec_b, interval.0, interval.1, tol)?;
        let ok = r.residual < tol;
        failures += usize::from(!ok);
        let _ = writeln!(
            out,
            "hvt O={name:<6} lhs={} rhs={} residual={:.3e} {}",
            format_number(r.lhs),
            format_number(r.rhs),
            r.residual,
            if ok { "ok" } else { "FAIL" }
        );
    }
    Ok(failures)
}
