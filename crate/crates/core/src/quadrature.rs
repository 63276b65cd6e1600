//! Adaptive Gauss-Kronrod quadrature (10-point Gauss nested in 21-point
//! Kronrod) with global bisection of the worst panel.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::airy::{SolutionSpec, DOMAIN_LIMIT};
use crate::error::{Error, Result};

/// Default evaluation budget for [`integrate_adaptive`].
pub const DEFAULT_BUDGET: usize = 1_000_000;

// Node tables keep their published digits.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// Gauss weights for the odd-indexed Kronrod nodes.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    roundoff: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> Result<Panel> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut eval = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand(x))
        }
    };

    let fc = eval(center)?;
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut abs_sum = (WGK[10] * fc).abs();
    for (j, &node) in XGK[..10].iter().enumerate() {
        let dx = half * node;
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    Ok(Panel {
        lo,
        hi,
        value,
        error: ((kronrod - gauss) * half).abs(),
        roundoff: 50.0 * f64::EPSILON * abs_sum * half.abs(),
    })
}

const EVALS_PER_PANEL: usize = 21;

/// Integrates `f` over `[x1, x2]` until the summed panel error is at most
/// `max(tol, tol * |value|)` (or the accumulated roundoff floor, if that is
/// larger). Fails with [`Error::NonConvergence`] once [`DEFAULT_BUDGET`]
/// evaluations are used.
pub fn integrate_adaptive<F>(f: F, x1: f64, x2: f64, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    integrate_adaptive_with_budget(f, x1, x2, tol, DEFAULT_BUDGET)
}

pub fn integrate_adaptive_with_budget<F>(
    mut f: F,
    x1: f64,
    x2: f64,
    tol: f64,
    budget: usize,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    if !(x1.is_finite() && x2.is_finite() && x1 <= x2) {
        return Err(Error::InvalidInterval(x1, x2));
    }
    if x1 == x2 {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }

    let first = gauss_kronrod(&mut f, x1, x2)?;
    let mut evaluations = EVALS_PER_PANEL;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    // panels too narrow to bisect further
    let mut settled_value = 0.0;
    let mut settled_error = 0.0;
    let mut settled_roundoff = 0.0;

    loop {
        let (mut value, mut error, mut roundoff) = (settled_value, settled_error, settled_roundoff);
        for p in heap.iter() {
            value += p.value;
            error += p.error;
            roundoff += p.roundoff;
        }
        let target = tol.max(tol * value.abs()).max(roundoff);
        if error <= target || heap.is_empty() {
            return Ok(QuadratureResult {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        if evaluations + 2 * EVALS_PER_PANEL > budget {
            return Err(Error::NonConvergence {
                evaluations,
                error_estimate: error,
            });
        }

        let worst = heap.pop().expect("heap checked non-empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi || (worst.hi - worst.lo) < 4.0 * f64::EPSILON * mid.abs() {
            settled_value += worst.value;
            settled_error += worst.error;
            settled_roundoff += worst.roundoff;
            continue;
        }
        heap.push(gauss_kronrod(&mut f, worst.lo, mid)?);
        heap.push(gauss_kronrod(&mut f, mid, worst.hi)?);
        evaluations += 2 * EVALS_PER_PANEL;
    }
}

/// Integrates `f` over `[x1, +inf)` where `f` carries the decay of
/// `Ai(x + s1) Ai(x + s2)` from the two witnesses, possibly times a
/// polynomial. The range is cut at `T` with `(4/3) (T + s_min)^(3/2)`
/// equal to twice `ln(amplitude / (tol / 2))`, so the neglected tail is
/// below `tol / 2`; the rest goes to [`integrate_adaptive`] at `tol / 2`.
pub fn integrate_improper<F>(
    f: F,
    x1: f64,
    tol: f64,
    witnesses: [&SolutionSpec; 2],
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    if witnesses.iter().any(|w| !w.is_pure_ai()) {
        return Err(Error::DivergentIntegrand);
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    if !x1.is_finite() {
        return Err(Error::InvalidInterval(x1, f64::INFINITY));
    }
    let upper = truncation_point(x1, tol, witnesses);
    integrate_adaptive(f, x1, upper, 0.5 * tol)
}

/// Upper cut-off used by [`integrate_improper`].
pub fn truncation_point(x1: f64, tol: f64, witnesses: [&SolutionSpec; 2]) -> f64 {
    let amplitude = (witnesses[0].c1() * witnesses[1].c1()).abs().max(1.0);
    let log_ratio = (amplitude / (0.5 * tol)).ln().max(1.0);
    let s_min = witnesses[0].shift_f64().min(witnesses[1].shift_f64());
    let s_max = witnesses[0].shift_f64().max(witnesses[1].shift_f64());
    // (4/3) t^(3/2) = 2 * log_ratio
    let t = (1.5 * log_ratio).powf(2.0 / 3.0);
    let upper = (t - s_min).min(DOMAIN_LIMIT - s_max);
    upper.max(x1)
}
