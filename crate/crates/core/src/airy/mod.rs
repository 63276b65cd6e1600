//! Real-argument Airy functions and shifted solutions of `y'' = (x + s) y`.
//!
//! For `|x| <= 8` the Maclaurin series is summed in double-double arithmetic,
//! which keeps the cancellation in `Ai` for positive `x` below `1e-12`
//! relative. Beyond that the standard asymptotic expansions are used,
//! truncated at the smallest term. On the negative axis the accuracy is
//! relative to the modulus `sqrt(Ai^2 + Bi^2)`, since pointwise relative
//! error is meaningless at the zeros.
//!
//! The numeric domain is `|x| <= 50`; outside it `Bi` grows past the point
//! where downstream polynomial weights would overflow, so evaluation fails
//! with [`Error::OverflowDomain`].

use crate::dd::DoubleDouble;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Largest `|x|` accepted by [`eval_airy_basis`].
pub const DOMAIN_LIMIT: f64 = 50.0;

/// `|x|` at which evaluation switches from the series to the asymptotic forms.
pub const SERIES_LIMIT: f64 = 8.0;

// Ai(0), -Ai'(0), sqrt(3), pi/4 and 2/3 as double-double pairs.
const AI0: DoubleDouble = DoubleDouble::new(0.3550280538878172, 2.05233632436212e-17);
const NEG_AIP0: DoubleDouble = DoubleDouble::new(0.2588194037928068, -2.522243111610832e-17);
const SQRT_3: DoubleDouble = DoubleDouble::new(1.7320508075688772, 1.0035084221806903e-16);
#[allow(clippy::approx_constant)] // high word of a double-double pair
const FRAC_PI_4: DoubleDouble = DoubleDouble::new(0.7853981633974483, 3.061616997868383e-17);
const TWO_THIRDS: DoubleDouble = DoubleDouble::new(0.6666666666666666, 3.700743415417188e-17);
const FRAC_1_SQRT_PI: f64 = 0.5641895835477563;

/// The four Airy basis values at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisValues {
    pub ai: f64,
    pub ai_prime: f64,
    pub bi: f64,
    pub bi_prime: f64,
}

impl BasisValues {
    /// `Ai Bi' - Ai' Bi`, which is `1/pi` for exact values.
    pub fn wronskian(&self) -> f64 {
        self.ai * self.bi_prime - self.ai_prime * self.bi
    }
}

/// A real solution `y(x) = c1 Ai(x + shift) + c2 Bi(x + shift)` of
/// `y'' = (x + shift) y`. The shift is the eigenvalue and is kept exact so
/// that it can be matched against the shifts of a symbolic form.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSpec {
    c1: f64,
    c2: f64,
    shift: BigRational,
    shift_dd: DoubleDouble,
}

impl SolutionSpec {
    pub fn new(c1: f64, c2: f64, shift: BigRational) -> Result<Self> {
        if !c1.is_finite() {
            return Err(Error::NonFinite(c1));
        }
        if !c2.is_finite() {
            return Err(Error::NonFinite(c2));
        }
        if c1 == 0.0 && c2 == 0.0 {
            return Err(Error::DegenerateSolution);
        }
        Ok(Self::raw(c1, c2, shift))
    }

    fn raw(c1: f64, c2: f64, shift: BigRational) -> Self {
        let shift_dd = DoubleDouble::from_rational(&shift);
        Self {
            c1,
            c2,
            shift,
            shift_dd,
        }
    }

    /// `Ai(x + shift)`.
    pub fn ai(shift: BigRational) -> Self {
        Self::raw(1.0, 0.0, shift)
    }

    /// `Bi(x + shift)`.
    pub fn bi(shift: BigRational) -> Self {
        Self::raw(0.0, 1.0, shift)
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn shift(&self) -> &BigRational {
        &self.shift
    }

    pub fn shift_f64(&self) -> f64 {
        self.shift_dd.hi
    }

    /// True when the solution decays at `+inf`, i.e. it has no `Bi` part.
    pub fn is_pure_ai(&self) -> bool {
        self.c2 == 0.0
    }
}

/// Evaluates `Ai`, `Ai'`, `Bi`, `Bi'` at `x`.
pub fn eval_airy_basis(x: f64) -> Result<BasisValues> {
    eval_basis_extended(DoubleDouble::from_f64(x)).map(|b| b.to_f64())
}

/// Basis values carried in double-double. In the series regime they are
/// accurate far beyond `f64`, which keeps forms with large cancelling
/// coefficients evaluable; in the asymptotic regime they are `f64` values.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ExtendedBasis {
    pub ai: DoubleDouble,
    pub ai_prime: DoubleDouble,
    pub bi: DoubleDouble,
    pub bi_prime: DoubleDouble,
}

impl ExtendedBasis {
    fn to_f64(self) -> BasisValues {
        BasisValues {
            ai: self.ai.to_f64(),
            ai_prime: self.ai_prime.to_f64(),
            bi: self.bi.to_f64(),
            bi_prime: self.bi_prime.to_f64(),
        }
    }

    fn from_f64(b: BasisValues) -> Self {
        Self {
            ai: DoubleDouble::from_f64(b.ai),
            ai_prime: DoubleDouble::from_f64(b.ai_prime),
            bi: DoubleDouble::from_f64(b.bi),
            bi_prime: DoubleDouble::from_f64(b.bi_prime),
        }
    }
}

pub(crate) fn eval_basis_extended(x: DoubleDouble) -> Result<ExtendedBasis> {
    let xf = x.to_f64();
    if !xf.is_finite() {
        return Err(Error::NonFinite(xf));
    }
    if xf.abs() > DOMAIN_LIMIT {
        return Err(Error::OverflowDomain(xf));
    }
    Ok(if xf.abs() <= SERIES_LIMIT {
        maclaurin(x)
    } else if xf > 0.0 {
        ExtendedBasis::from_f64(asymptotic_positive(xf))
    } else {
        ExtendedBasis::from_f64(asymptotic_negative(-xf))
    })
}

/// `(y, y')` in double-double, with `x + shift` formed exactly enough that
/// a non-dyadic shift such as `1/3` does not perturb the argument.
pub(crate) fn eval_solution_extended(
    spec: &SolutionSpec,
    x: f64,
) -> Result<(DoubleDouble, DoubleDouble)> {
    if !x.is_finite() {
        return Err(Error::NonFinite(x));
    }
    let b = eval_basis_extended(DoubleDouble::from_f64(x) + spec.shift_dd)?;
    let c1 = DoubleDouble::from_f64(spec.c1);
    let c2 = DoubleDouble::from_f64(spec.c2);
    Ok((c1 * b.ai + c2 * b.bi, c1 * b.ai_prime + c2 * b.bi_prime))
}

/// Returns `(y, y')` for the solution at `x`.
pub fn eval_solution(spec: &SolutionSpec, x: f64) -> Result<(f64, f64)> {
    let (y, yp) = eval_solution_extended(spec, x)?;
    Ok((y.to_f64(), yp.to_f64()))
}

/// `y1 y2' - y1' y2` for two solutions of the same equation.
pub fn wronskian_numeric(spec1: &SolutionSpec, spec2: &SolutionSpec, x: f64) -> Result<f64> {
    if spec1.shift != spec2.shift {
        return Err(Error::ShiftMismatch {
            expected: Box::new(spec1.shift.clone()),
            found: Box::new(spec2.shift.clone()),
        });
    }
    let (y1, y1p) = eval_solution(spec1, x)?;
    let (y2, y2p) = eval_solution(spec2, x)?;
    Ok(y1 * y2p - y1p * y2)
}

/// `Ai = c1 f - c2 g`, `Bi = sqrt(3) (c1 f + c2 g)` with
/// `f = sum 3^k (1/3)_k x^{3k} / (3k)!` and `g = sum 3^k (2/3)_k x^{3k+1} / (3k+1)!`.
fn maclaurin(xd: DoubleDouble) -> ExtendedBasis {
    let x3 = xd * xd * xd;

    let mut f = DoubleDouble::from_f64(1.0);
    let mut g = xd;
    let mut fp = DoubleDouble::ZERO;
    let mut gp = DoubleDouble::from_f64(1.0);

    let mut tf = DoubleDouble::from_f64(1.0);
    let mut tg = xd;
    let mut tfp = xd * xd * DoubleDouble::from_f64(0.5);
    let mut tgp = DoubleDouble::from_f64(1.0);
    fp = fp + tfp;

    for k in 0..200u32 {
        let k = f64::from(k);
        tf = (tf * x3).div_f64((3.0 * k + 2.0) * (3.0 * k + 3.0));
        tg = (tg * x3).div_f64((3.0 * k + 3.0) * (3.0 * k + 4.0));
        tgp = (tgp * x3).div_f64((3.0 * k + 1.0) * (3.0 * k + 3.0));
        // tfp starts at the k = 1 term, so its recurrence index is k + 1
        tfp = (tfp * x3).div_f64((3.0 * k + 3.0) * (3.0 * k + 5.0));
        f = f + tf;
        g = g + tg;
        gp = gp + tgp;
        fp = fp + tfp;

        let small = |t: DoubleDouble, s: DoubleDouble| t.abs().hi <= 1e-34 * s.abs().hi.max(1.0);
        if small(tf, f) && small(tg, g) && small(tfp, fp) && small(tgp, gp) {
            break;
        }
    }

    let ai = AI0 * f - NEG_AIP0 * g;
    let ai_prime = AI0 * fp - NEG_AIP0 * gp;
    let bi = SQRT_3 * (AI0 * f + NEG_AIP0 * g);
    let bi_prime = SQRT_3 * (AI0 * fp + NEG_AIP0 * gp);
    ExtendedBasis {
        ai,
        ai_prime,
        bi,
        bi_prime,
    }
}

/// Terms `u_k / zeta^k` and `v_k / zeta^k` of the asymptotic series, cut
/// off before the smallest term of the `u` sequence starts growing.
fn asymptotic_terms(zeta: f64) -> Vec<(f64, f64)> {
    let mut terms = vec![(1.0, 1.0)];
    let mut u = 1.0f64;
    let mut zk = 1.0f64;
    let mut prev = 1.0f64;
    for k in 1..400u32 {
        let kf = f64::from(k);
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        zk *= zeta;
        let tu = u / zk;
        let tv = v / zk;
        if tu.abs() >= prev {
            break;
        }
        terms.push((tu, tv));
        prev = tu.abs();
        if prev < 1e-18 {
            break;
        }
    }
    terms
}

fn asymptotic_positive(x: f64) -> BasisValues {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let quarter = x.sqrt().sqrt();
    let terms = asymptotic_terms(zeta);

    let (mut su_alt, mut sv_alt, mut su, mut sv) = (0.0, 0.0, 0.0, 0.0);
    for (k, &(tu, tv)) in terms.iter().enumerate().rev() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        su_alt += sign * tu;
        sv_alt += sign * tv;
        su += tu;
        sv += tv;
    }
    let decay = (-zeta).exp();
    let growth = zeta.exp();
    BasisValues {
        ai: 0.5 * FRAC_1_SQRT_PI * decay / quarter * su_alt,
        ai_prime: -0.5 * FRAC_1_SQRT_PI * quarter * decay * sv_alt,
        bi: FRAC_1_SQRT_PI * growth / quarter * su,
        bi_prime: FRAC_1_SQRT_PI * quarter * growth * sv,
    }
}

/// Oscillatory forms for `Ai(-z)`, `Bi(-z)` with `z > 0`. The phase
/// `zeta - pi/4` is formed in double-double so that it stays accurate for
/// `zeta` in the hundreds.
fn asymptotic_negative(z: f64) -> BasisValues {
    let zd = DoubleDouble::from_f64(z);
    let zeta_dd = TWO_THIRDS * zd * zd.sqrt();
    let zeta = zeta_dd.to_f64();
    let phase = zeta_dd - FRAC_PI_4;
    let (s_hi, c_hi) = phase.hi.sin_cos();
    let cos = c_hi - phase.lo * s_hi;
    let sin = s_hi + phase.lo * c_hi;

    let terms = asymptotic_terms(zeta);
    // even/odd split with alternating signs within each half
    let (mut pu, mut qu, mut pv, mut qv) = (0.0, 0.0, 0.0, 0.0);
    for (j, &(tu, tv)) in terms.iter().enumerate().rev() {
        let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if j % 2 == 0 {
            pu += sign * tu;
            pv += sign * tv;
        } else {
            qu += sign * tu;
            qv += sign * tv;
        }
    }
    let quarter = z.sqrt().sqrt();
    let amp = FRAC_1_SQRT_PI / quarter;
    let amp_p = FRAC_1_SQRT_PI * quarter;
    BasisValues {
        ai: amp * (cos * pu + sin * qu),
        ai_prime: amp_p * (sin * pv - cos * qv),
        bi: amp * (-sin * pu + cos * qu),
        bi_prime: amp_p * (cos * pv + sin * qv),
    }
}

impl Default for SolutionSpec {
    fn default() -> Self {
        Self::ai(BigRational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[allow(clippy::excessive_precision)]
    // (x, Ai, Ai', Bi, Bi') from a 50-digit mpmath evaluation.
    const REFERENCE: &[(f64, f64, f64, f64, f64)] = &[
        (-50.0, -0.16188142361232092392, 0.96898983727674908714, -0.13715015212882007338, -1.1453617002654776003),
        (-37.5, 0.013668155455244660842, 1.3937345616095672373, -0.22758034684857820944, 0.082183089116332928643),
        (-20.0, -0.17640612707798468959, 0.8928628567364712384, -0.20013930932265134928, -0.79142903383953647936),
        (-12.25, -0.26764469882714229824, 0.48087136842700445437, -0.13893984952273793989, -0.93966998680283516834),
        (-8.000001, -0.052705985917112879297, 0.93556051655413541947, -0.33125142129931516016, -0.1594531478251532354),
        (-8.0, -0.052705050356386202622, 0.93556093819830655103, -0.33125158075113785997, -0.15945049781298138935),
        (-7.999999, -0.052704114795237054599, 0.93556135983494086452, -0.33125174020031068876, -0.15944784779986283722),
        (-6.5, -0.23802030199711580359, -0.674952492513202173, 0.26101265763648395182, -0.59717066629162201698),
        (-3.0, -0.37881429367765807435, 0.31458376921659881365, -0.19828962637492654322, -0.67561122268525853767),
        (-1.0, 0.5355608832923521188, -0.010160567116645209395, 0.10399738949694461189, 0.59237562642279235082),
        (-0.25, 0.41872461427545292423, -0.24638918992017597303, 0.50139987346923338897, 0.46515148833715370327),
        (0.0, 0.35502805388781723926, -0.25881940379280679841, 0.61492662744600073515, 0.44828835735382635791),
        (0.5, 0.23169360648083348977, -0.22491053266468389314, 0.8542770431031554933, 0.54457256414059230183),
        (1.0, 0.13529241631288141552, -0.15914744129679321279, 1.2074235949528712594, 0.93243593339277563296),
        (2.5, 0.015725923380470489995, -0.026250881035903230365, 6.4816607384605786081, 9.4214233173343017556),
        (5.0, 0.00010834442813607441735, -0.000247413890868462476, 657.79204417117118244, 1435.8190802179825187),
        (7.999999, 4.6922210305109814161e-8, -1.3414430516780111297e-7, 1199582.6497869450568, 3354332.7160705216878),
        (8.0, 4.6922076160992316256e-8, -1.3414392979067865743e-7, 1199586.0041244599309, 3354342.3127445388765),
        (8.000001, 4.6921942017250314105e-8, -1.3414355441458276465e-7, 1199589.3584715685137, 3354351.9094465818662),
        (9.5, 5.3302637046174916266e-10, -1.6566394593740666263e-9, 96892265.580451092832, 296034763.86800503867),
        (15.0, 2.164962520737992299e-18, -8.4205679540177727661e-18, 18982099567493589.685, 73197492034070104.962),
        (25.0, 8.1160268246913866838e-38, -4.0660893372432810053e-37, 3.9220307780413817738e+35, 1.957073508323330897e+36),
        (40.0, 6.3657426585529149096e-75, -4.0300179776006780423e-74, 3.9531393024385935335e+72, 2.497707968170696875e+73),
        (50.0, 4.5849417240748284783e-104, -3.2443318198287992961e-103, 4.9090996994442193288e+101, 3.4687987795459767244e+102),
    ];

    fn tolerance(x: f64) -> f64 {
        if x.abs() <= SERIES_LIMIT {
            1e-12
        } else {
            1e-10
        }
    }

    #[test]
    fn matches_reference_values() {
        for &(x, ai, aip, bi, bip) in REFERENCE {
            let b = eval_airy_basis(x).unwrap();
            let tol = tolerance(x);
            if x < 0.0 {
                let m = ai.hypot(bi);
                let n = aip.hypot(bip);
                for (got, want, scale) in [(b.ai, ai, m), (b.bi, bi, m), (b.ai_prime, aip, n), (b.bi_prime, bip, n)] {
                    assert!((got - want).abs() <= tol * scale, "x={x}: {got} vs {want}");
                }
            } else {
                for (got, want) in [(b.ai, ai), (b.bi, bi), (b.ai_prime, aip), (b.bi_prime, bip)] {
                    assert!((got - want).abs() <= tol * want.abs(), "x={x}: {got} vs {want}");
                }
            }
        }
    }

    #[test]
    fn values_at_origin() {
        let b = eval_airy_basis(0.0).unwrap();
        assert!((b.ai - 0.355_028_053_887_817_2).abs() < 1e-16);
        assert!((b.ai_prime + 0.258_819_403_792_806_8).abs() < 1e-16);
        assert!((b.bi - 0.614_926_627_446_000_7).abs() < 1e-16);
        assert!((b.bi_prime - 0.448_288_357_353_826_4).abs() < 1e-16);
        assert!((b.wronskian() - std::f64::consts::FRAC_1_PI).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(eval_airy_basis(f64::NAN), Err(Error::NonFinite(_))));
        assert!(matches!(eval_airy_basis(f64::INFINITY), Err(Error::NonFinite(_))));
        assert!(matches!(eval_airy_basis(50.5), Err(Error::OverflowDomain(_))));
        assert!(matches!(eval_airy_basis(-51.0), Err(Error::OverflowDomain(_))));
        assert!(eval_airy_basis(50.0).is_ok());
    }

    #[test]
    fn solution_composition() {
        let x = 0.7;
        let b = eval_airy_basis(x).unwrap();
        let (y, yp) = eval_solution(&SolutionSpec::ai(BigRational::zero()), x).unwrap();
        assert_eq!((y, yp), (b.ai, b.ai_prime));

        let two = BigRational::from_integer(BigInt::from(-2));
        let (y, yp) = eval_solution(&SolutionSpec::bi(two), 2.0).unwrap();
        let b0 = eval_airy_basis(0.0).unwrap();
        assert_eq!((y, yp), (b0.bi, b0.bi_prime));

        let mix = SolutionSpec::new(2.0, 3.0, BigRational::zero()).unwrap();
        let (y, yp) = eval_solution(&mix, x).unwrap();
        assert!((y - (2.0 * b.ai + 3.0 * b.bi)).abs() < 1e-15);
        assert!((yp - (2.0 * b.ai_prime + 3.0 * b.bi_prime)).abs() < 1e-15);
    }

    #[test]
    fn degenerate_spec_rejected() {
        assert_eq!(
            SolutionSpec::new(0.0, 0.0, BigRational::zero()),
            Err(Error::DegenerateSolution)
        );
    }

    #[test]
    fn wronskian_cases() {
        let z = BigRational::zero();
        let ai = SolutionSpec::ai(z.clone());
        let bi = SolutionSpec::bi(z.clone());
        let w = wronskian_numeric(&ai, &bi, 1.0).unwrap();
        assert!((w - std::f64::consts::FRAC_1_PI).abs() < 1e-12);
        assert_eq!(wronskian_numeric(&ai, &ai, 1.3).unwrap(), 0.0);
        let two_ai = SolutionSpec::new(2.0, 0.0, z).unwrap();
        assert!(wronskian_numeric(&ai, &two_ai, -2.0).unwrap().abs() < 1e-16);
        let shifted = SolutionSpec::ai(BigRational::from_integer(BigInt::from(1)));
        assert!(matches!(
            wronskian_numeric(&ai, &shifted, 0.0),
            Err(Error::ShiftMismatch { .. })
        ));
    }

    #[test]
    fn second_derivative_at_origin_vanishes() {
        let h = 1e-4;
        let a = |x: f64| eval_airy_basis(x).unwrap().ai;
        let fd = (a(h) - 2.0 * a(0.0) + a(-h)) / (h * h);
        assert!(fd.abs() < 1e-6);
    }
}
