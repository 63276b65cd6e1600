//! Bilinear Airy forms `P1 AB + P2 AB' + P3 A'B + P4 A'B'`.
//!
//! `A` and `B` solve `A'' = (x + a) A` and `B'' = (x + b) B`. With those two
//! reduction rules the space of forms with polynomial coefficients is closed
//! under `d/dx`, which is what makes exact differentiate-back checks possible.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::{parse_rational, RationalPolynomial};
use crate::airy::{eval_solution_extended, SolutionSpec};
use crate::dd::DoubleDouble;
use crate::error::{Error, Result};

/// Which product of `A`, `B` and their derivatives a coefficient multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    AB,
    ABp,
    ApB,
    ApBp,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [Pattern::AB, Pattern::ABp, Pattern::ApB, Pattern::ApBp];

    pub fn as_str(self) -> &'static str {
        match self {
            Pattern::AB => "AB",
            Pattern::ABp => "ABp",
            Pattern::ApB => "ApB",
            Pattern::ApBp => "ApBp",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pattern {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown pattern '{s}' (expected AB, ABp, ApB or ApBp)"))
    }
}

/// Which Wronskian [`wronskian_form`] builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WronskianOrientation {
    /// `W(A, hB)`
    AgainstB,
    /// `W(A, hB')`
    AgainstBPrime,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    ab: RationalPolynomial,
    abp: RationalPolynomial,
    apb: RationalPolynomial,
    apbp: RationalPolynomial,
    shift_a: BigRational,
    shift_b: BigRational,
}

impl BilinearForm {
    pub fn zero(shift_a: BigRational, shift_b: BigRational) -> Self {
        Self {
            ab: RationalPolynomial::zero(),
            abp: RationalPolynomial::zero(),
            apb: RationalPolynomial::zero(),
            apbp: RationalPolynomial::zero(),
            shift_a,
            shift_b,
        }
    }

    pub fn new(
        ab: RationalPolynomial,
        abp: RationalPolynomial,
        apb: RationalPolynomial,
        apbp: RationalPolynomial,
        shift_a: BigRational,
        shift_b: BigRational,
    ) -> Self {
        Self {
            ab,
            abp,
            apb,
            apbp,
            shift_a,
            shift_b,
        }
    }

    /// `p` in the slot named by `pattern`, zero elsewhere.
    pub fn single(
        pattern: Pattern,
        p: RationalPolynomial,
        shift_a: BigRational,
        shift_b: BigRational,
    ) -> Self {
        let mut form = Self::zero(shift_a, shift_b);
        *form.slot_mut(pattern) = p;
        form
    }

    pub fn coefficient(&self, pattern: Pattern) -> &RationalPolynomial {
        match pattern {
            Pattern::AB => &self.ab,
            Pattern::ABp => &self.abp,
            Pattern::ApB => &self.apb,
            Pattern::ApBp => &self.apbp,
        }
    }

    fn slot_mut(&mut self, pattern: Pattern) -> &mut RationalPolynomial {
        match pattern {
            Pattern::AB => &mut self.ab,
            Pattern::ABp => &mut self.abp,
            Pattern::ApB => &mut self.apb,
            Pattern::ApBp => &mut self.apbp,
        }
    }

    pub fn shift_a(&self) -> &BigRational {
        &self.shift_a
    }

    pub fn shift_b(&self) -> &BigRational {
        &self.shift_b
    }

    pub fn is_zero(&self) -> bool {
        Pattern::ALL.iter().all(|&p| self.coefficient(p).is_zero())
    }

    fn same_shifts(&self, other: &Self) -> bool {
        self.shift_a == other.shift_a && self.shift_b == other.shift_b
    }

    fn map(&self, f: impl Fn(&RationalPolynomial) -> RationalPolynomial) -> Self {
        Self {
            ab: f(&self.ab),
            abp: f(&self.abp),
            apb: f(&self.apb),
            apbp: f(&self.apbp),
            shift_a: self.shift_a.clone(),
            shift_b: self.shift_b.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map(|p| p.scale(c))
    }

    /// Multiplies every coefficient by the polynomial `q`.
    pub fn mul_poly(&self, q: &RationalPolynomial) -> Self {
        self.map(|p| p * q)
    }

    /// Applies `p(x) -> p(x + s)` to every coefficient, leaving the shifts alone.
    pub fn compose_shift(&self, s: &BigRational) -> Self {
        self.map(|p| p.compose_shift(s))
    }

    pub fn with_shifts(mut self, shift_a: BigRational, shift_b: BigRational) -> Self {
        self.shift_a = shift_a;
        self.shift_b = shift_b;
        self
    }

    /// Exact `d/dx`, eliminating second derivatives via the reduction rules.
    pub fn differentiate(&self) -> Self {
        let xa = RationalPolynomial::linear_shift(self.shift_a.clone());
        let xb = RationalPolynomial::linear_shift(self.shift_b.clone());

        let mut ab = self.ab.differentiate();
        let mut abp = self.abp.differentiate();
        let mut apb = self.apb.differentiate();
        let mut apbp = self.apbp.differentiate();

        // d(P AB) = P' AB + P AB' + P A'B
        abp = &abp + &self.ab;
        apb = &apb + &self.ab;
        // d(P AB') = P' AB' + P A'B' + P (x+b) AB
        apbp = &apbp + &self.abp;
        ab = &ab + &(&self.abp * &xb);
        // d(P A'B) = P' A'B + P A'B' + P (x+a) AB
        apbp = &apbp + &self.apb;
        ab = &ab + &(&self.apb * &xa);
        // d(P A'B') = P' A'B' + P (x+a) AB' + P (x+b) A'B
        abp = &abp + &(&self.apbp * &xa);
        apb = &apb + &(&self.apbp * &xb);

        Self::new(ab, abp, apb, apbp, self.shift_a.clone(), self.shift_b.clone())
    }

    /// Exchanges the roles of `A` and `B`.
    pub fn swap(&self) -> Self {
        Self {
            ab: self.ab.clone(),
            abp: self.apb.clone(),
            apb: self.abp.clone(),
            apbp: self.apbp.clone(),
            shift_a: self.shift_b.clone(),
            shift_b: self.shift_a.clone(),
        }
    }

    /// Evaluates the form with `A`, `B` given by two concrete solutions.
    /// The solution shifts must match the form's shifts exactly.
    pub fn eval(&self, spec_a: &SolutionSpec, spec_b: &SolutionSpec, x: f64) -> Result<f64> {
        self.to_numeric(spec_a, spec_b)?.eval(x)
    }

    /// Converts coefficients to `f64` once, for repeated evaluation.
    pub fn to_numeric(&self, spec_a: &SolutionSpec, spec_b: &SolutionSpec) -> Result<NumericForm> {
        check_shift(&self.shift_a, spec_a.shift())?;
        check_shift(&self.shift_b, spec_b.shift())?;
        let dd = |p: &RationalPolynomial| p.coeffs().iter().map(DoubleDouble::from_rational).collect();
        Ok(NumericForm {
            coeffs: [dd(&self.ab), dd(&self.abp), dd(&self.apb), dd(&self.apbp)],
            spec_a: spec_a.clone(),
            spec_b: spec_b.clone(),
        })
    }
}

fn check_shift(expected: &BigRational, found: &BigRational) -> Result<()> {
    if expected != found {
        return Err(Error::ShiftMismatch {
            expected: Box::new(expected.clone()),
            found: Box::new(found.clone()),
        });
    }
    Ok(())
}

/// A form bound to two concrete solutions, ready for repeated evaluation.
///
/// Antiderivatives for distinct shifts have coefficients that grow
/// factorially with the degree and cancel heavily, so coefficients, Airy
/// values and the sum are all carried in double-double and only the final
/// value is rounded to `f64`.
#[derive(Debug, Clone)]
pub struct NumericForm {
    coeffs: [Vec<DoubleDouble>; 4],
    spec_a: SolutionSpec,
    spec_b: SolutionSpec,
}

impl NumericForm {
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.eval_extended(x).map(DoubleDouble::to_f64)
    }

    /// `G(hi) - G(lo)`, subtracted before rounding. Antiderivative values
    /// can be many orders of magnitude larger than their difference.
    pub fn definite(&self, lo: f64, hi: f64) -> Result<f64> {
        Ok((self.eval_extended(hi)? - self.eval_extended(lo)?).to_f64())
    }

    fn eval_extended(&self, x: f64) -> Result<DoubleDouble> {
        let (a, ap) = eval_solution_extended(&self.spec_a, x)?;
        let (b, bp) = eval_solution_extended(&self.spec_b, x)?;
        let xd = DoubleDouble::from_f64(x);
        let horner = |c: &[DoubleDouble]| {
            c.iter().rev().fold(DoubleDouble::ZERO, |acc, &c| acc * xd + c)
        };
        let [p_ab, p_abp, p_apb, p_apbp] = &self.coeffs;
        let total = horner(p_ab) * a * b
            + horner(p_abp) * a * bp
            + horner(p_apb) * ap * b
            + horner(p_apbp) * ap * bp;
        Ok(total)
    }
}

/// `W(A, hB)` or `W(A, hB')` as an exact form, with `W(u, v) = u v' - u' v`.
pub fn wronskian_form(
    h: &RationalPolynomial,
    orientation: WronskianOrientation,
    shift_a: BigRational,
    shift_b: BigRational,
) -> BilinearForm {
    let dh = h.differentiate();
    match orientation {
        WronskianOrientation::AgainstB => {
            BilinearForm::new(dh, h.clone(), -h, RationalPolynomial::zero(), shift_a, shift_b)
        }
        WronskianOrientation::AgainstBPrime => {
            let xb = RationalPolynomial::linear_shift(shift_b.clone());
            BilinearForm::new(h * &xb, dh, RationalPolynomial::zero(), -h, shift_a, shift_b)
        }
    }
}

impl Add for &BilinearForm {
    type Output = BilinearForm;
    fn add(self, rhs: &BilinearForm) -> BilinearForm {
        assert!(self.same_shifts(rhs), "adding forms with different shifts");
        BilinearForm::new(
            &self.ab + &rhs.ab,
            &self.abp + &rhs.abp,
            &self.apb + &rhs.apb,
            &self.apbp + &rhs.apbp,
            self.shift_a.clone(),
            self.shift_b.clone(),
        )
    }
}

impl Sub for &BilinearForm {
    type Output = BilinearForm;
    fn sub(self, rhs: &BilinearForm) -> BilinearForm {
        self + &(-rhs)
    }
}

impl Neg for &BilinearForm {
    type Output = BilinearForm;
    fn neg(self) -> BilinearForm {
        self.map(|p| -p)
    }
}

impl Add for BilinearForm {
    type Output = BilinearForm;
    fn add(self, rhs: BilinearForm) -> BilinearForm {
        &self + &rhs
    }
}

impl Sub for BilinearForm {
    type Output = BilinearForm;
    fn sub(self, rhs: BilinearForm) -> BilinearForm {
        &self - &rhs
    }
}

impl Neg for BilinearForm {
    type Output = BilinearForm;
    fn neg(self) -> BilinearForm {
        -&self
    }
}

impl fmt::Display for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = [
            (Pattern::AB, "A*B"),
            (Pattern::ABp, "A*B'"),
            (Pattern::ApB, "A'*B"),
            (Pattern::ApBp, "A'*B'"),
        ];
        let mut any = false;
        for (pattern, name) in names {
            let p = self.coefficient(pattern);
            if p.is_zero() {
                continue;
            }
            if any {
                write!(f, " + ")?;
            }
            write!(f, "({p})*{name}")?;
            any = true;
        }
        if !any {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Coefficient arrays keyed by pattern, as exact rational strings in
/// ascending powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormCoefficients {
    #[serde(rename = "AB")]
    pub ab: Vec<String>,
    #[serde(rename = "ABp")]
    pub abp: Vec<String>,
    #[serde(rename = "ApB")]
    pub apb: Vec<String>,
    #[serde(rename = "ApBp")]
    pub apbp: Vec<String>,
}

/// Canonical serialized form:
/// `{"shift_a": "p/q", "shift_b": "p/q", "form": {"AB": [...], ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormRecord {
    pub shift_a: String,
    pub shift_b: String,
    pub form: FormCoefficients,
}

fn poly_strings(p: &RationalPolynomial) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn parse_poly(strings: &[String]) -> std::result::Result<RationalPolynomial, String> {
    strings
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| format!("invalid rational '{s}'")))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(RationalPolynomial::from_coeffs)
}

impl From<&BilinearForm> for FormRecord {
    fn from(form: &BilinearForm) -> Self {
        FormRecord {
            shift_a: form.shift_a.to_string(),
            shift_b: form.shift_b.to_string(),
            form: FormCoefficients {
                ab: poly_strings(&form.ab),
                abp: poly_strings(&form.abp),
                apb: poly_strings(&form.apb),
                apbp: poly_strings(&form.apbp),
            },
        }
    }
}

impl TryFrom<&FormRecord> for BilinearForm {
    type Error = String;
    fn try_from(rec: &FormRecord) -> std::result::Result<Self, String> {
        let shift = |s: &str| parse_rational(s).ok_or_else(|| format!("invalid shift '{s}'"));
        Ok(BilinearForm::new(
            parse_poly(&rec.form.ab)?,
            parse_poly(&rec.form.abp)?,
            parse_poly(&rec.form.apb)?,
            parse_poly(&rec.form.apbp)?,
            shift(&rec.shift_a)?,
            shift(&rec.shift_b)?,
        ))
    }
}

impl Default for BilinearForm {
    fn default() -> Self {
        Self::zero(BigRational::zero(), BigRational::zero())
    }
}

/// `(x + c)` helper used by callers building forms by hand.
pub fn x_plus(c: &BigRational) -> RationalPolynomial {
    RationalPolynomial::linear_shift(c.clone())
}
