//! Numeric check of the modified hypervirial identity
//! `int A [L, O] B dx = (a - b) int A O B dx + W(A, O B)` with
//! `L = D^2 - x`, over a finite interval.

use num_rational::BigRational;

use crate::airy::SolutionSpec;
use crate::error::{Error, Result};
use crate::quadrature::integrate_adaptive;
use crate::symbolic::{
    wronskian_form, x_plus, BilinearForm, Pattern, RationalPolynomial, WronskianOrientation,
};

/// The operators `O` the check supports.
#[derive(Debug, Clone, PartialEq)]
pub enum Operator {
    /// `O = g(x)`
    MultiplyBy(RationalPolynomial),
    /// `O = f(x) D`
    PolyTimesD(RationalPolynomial),
}

impl Operator {
    /// `A [L, O] B`, `A O B` and `W(A, O B)` as forms.
    fn forms(&self, a: &BigRational, b: &BigRational) -> (BilinearForm, BilinearForm, BilinearForm) {
        let form = |ab: RationalPolynomial, abp: RationalPolynomial| {
            BilinearForm::new(
                ab,
                abp,
                RationalPolynomial::zero(),
                RationalPolynomial::zero(),
                a.clone(),
                b.clone(),
            )
        };
        match self {
            // [L, g] = g'' + 2 g' D
            Operator::MultiplyBy(g) => {
                let dg = g.differentiate();
                let commutator = form(dg.differentiate(), dg.scale(&crate::symbolic::integer(2)));
                let plain = BilinearForm::single(Pattern::AB, g.clone(), a.clone(), b.clone());
                let boundary = wronskian_form(g, WronskianOrientation::AgainstB, a.clone(), b.clone());
                (commutator, plain, boundary)
            }
            // [L, fD] = f'' D + 2 f' (L + x) + f, with L B = b B
            Operator::PolyTimesD(f) => {
                let df = f.differentiate();
                let ab = &(&df * &x_plus(b)).scale(&crate::symbolic::integer(2)) + f;
                let commutator = form(ab, df.differentiate());
                let plain = BilinearForm::single(Pattern::ABp, f.clone(), a.clone(), b.clone());
                let boundary =
                    wronskian_form(f, WronskianOrientation::AgainstBPrime, a.clone(), b.clone());
                (commutator, plain, boundary)
            }
        }
    }
}

/// Both sides of the identity and their difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HvtReport {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Integrates both sides over `[x1, x2]` and reports `|lhs - rhs|`.
/// Quadrature runs at `tol / 100` so the residual reflects the identity
/// rather than the integrator.
pub fn verify_hvt(
    op: &Operator,
    spec_a: &SolutionSpec,
    spec_b: &SolutionSpec,
    x1: f64,
    x2: f64,
    tol: f64,
) -> Result<HvtReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    if !(x1.is_finite() && x2.is_finite() && x1 <= x2) {
        return Err(Error::InvalidInterval(x1, x2));
    }
    let (a, b) = (spec_a.shift(), spec_b.shift());
    let (commutator, plain, boundary) = op.forms(a, b);
    let commutator = commutator.to_numeric(spec_a, spec_b)?;
    let plain = plain.to_numeric(spec_a, spec_b)?;
    let boundary = boundary.to_numeric(spec_a, spec_b)?;

    // endpoint evaluation surfaces domain errors before quadrature starts
    let w = boundary.eval(x2)? - boundary.eval(x1)?;
    commutator.eval(x1)?;
    commutator.eval(x2)?;

    let qtol = tol * 1e-2;
    let lhs = integrate_adaptive(|x| commutator.eval(x).unwrap_or(f64::NAN), x1, x2, qtol)?.value;
    let ab_diff = spec_a.shift_f64() - spec_b.shift_f64();
    let rhs = if a == b {
        w
    } else {
        let inner = integrate_adaptive(|x| plain.eval(x).unwrap_or(f64::NAN), x1, x2, qtol)?.value;
        ab_diff * inner + w
    };
    Ok(HvtReport {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::integer;

    fn specs() -> (SolutionSpec, SolutionSpec) {
        (SolutionSpec::ai(integer(0)), SolutionSpec::ai(integer(1)))
    }

    #[test]
    fn constant_operator_is_definite_gordon_case() {
        let (sa, sb) = specs();
        let op = Operator::MultiplyBy(RationalPolynomial::one());
        let r = verify_hvt(&op, &sa, &sb, -3.0, 2.0, 1e-8).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(r.residual < 1e-8, "{r:?}");
    }

    #[test]
    fn x_squared_operator() {
        let (sa, sb) = specs();
        let op = Operator::MultiplyBy(RationalPolynomial::from_i64(&[0, 0, 1]));
        let r = verify_hvt(&op, &sa, &sb, -3.0, 2.0, 1e-8).unwrap();
        assert!(r.residual < 1e-8, "{r:?}");
    }

    #[test]
    fn x_d_operator() {
        let (sa, sb) = specs();
        let op = Operator::PolyTimesD(RationalPolynomial::x());
        let r = verify_hvt(&op, &sa, &sb, -3.0, 2.0, 1e-8).unwrap();
        assert!(r.residual < 1e-8, "{r:?}");
    }

    #[test]
    fn equal_shift_mixed_solutions() {
        let sa = SolutionSpec::new(1.0, 0.5, integer(0)).unwrap();
        let sb = SolutionSpec::new(-0.3, 1.0, integer(0)).unwrap();
        let op = Operator::PolyTimesD(RationalPolynomial::from_i64(&[1, 0, 1]));
        let r = verify_hvt(&op, &sa, &sb, -4.0, 1.5, 1e-8).unwrap();
        assert!(r.residual < 1e-8, "{r:?}");
    }

    #[test]
    fn rejects_bad_input() {
        let (sa, sb) = specs();
        let op = Operator::MultiplyBy(RationalPolynomial::one());
        assert!(matches!(verify_hvt(&op, &sa, &sb, 2.0, 1.0, 1e-8), Err(Error::InvalidInterval(..))));
        assert!(matches!(verify_hvt(&op, &sa, &sb, 0.0, 1.0, 0.0), Err(Error::InvalidTolerance(_))));
        assert!(matches!(verify_hvt(&op, &sa, &sb, 0.0, 60.0, 1e-8), Err(Error::OverflowDomain(_))));
    }
}
