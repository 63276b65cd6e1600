//! Closed-form antiderivatives of `f(x) * A * B` and its derivative variants.
//!
//! Every result is a [`BilinearForm`] `G` with `G' = f * pattern` exactly,
//! where `A'' = (x + a) A` and `B'' = (x + b) B`.
//!
//! * equal shifts: the Albright recurrence in `u = x + a`, where
//!   `(2n+1) I_n = n(n-1)(n-2)/2 I_{n-3} + u^{n+1} AB - n(n-1)/2 u^{n-2} AB
//!   + n/2 u^{n-1} (AB' + A'B) - u^n A'B'`;
//! * distinct shifts: the master equation with `F = x^n`, `f = n x^{n-1}`,
//!   solved for `int A F B`, which divides by `(a - b)^2`;
//! * `AB'`: `int g' A B' = (a-b)/2 int g A B - 1/2 int g'' A B + 1/2 W(A, gB)`;
//! * `A'B`: the `AB'` result with the roles of `A` and `B` exchanged;
//! * `A'B'`: `int f A'B' = f A'B - int f' A'B - int (x+a) f A B`.
//!
//! Near-equal distinct shifts give exact but numerically ill-conditioned
//! forms; nothing switches regimes automatically.

mod hvt;

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

pub use crate::symbolic::Pattern;
use crate::error::{Error, Result};
use crate::symbolic::{
    integer, rational, wronskian_form, BilinearForm, RationalPolynomial, WronskianOrientation,
};
pub use hvt::{verify_hvt, HvtReport, Operator};

/// Polynomial weight, derivative pattern and shifts of one integral.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionRequest {
    pub f: RationalPolynomial,
    pub pattern: Pattern,
    pub shift_a: BigRational,
    pub shift_b: BigRational,
}

impl ReductionRequest {
    pub fn new(
        f: RationalPolynomial,
        pattern: Pattern,
        shift_a: BigRational,
        shift_b: BigRational,
    ) -> Self {
        Self {
            f,
            pattern,
            shift_a,
            shift_b,
        }
    }

    /// The integrand `f * pattern` as a form, i.e. what the antiderivative
    /// must differentiate to.
    pub fn integrand(&self) -> BilinearForm {
        BilinearForm::single(
            self.pattern,
            self.f.clone(),
            self.shift_a.clone(),
            self.shift_b.clone(),
        )
    }
}

fn monomial(deg: usize) -> RationalPolynomial {
    RationalPolynomial::monomial(integer(1), deg)
}

fn int(n: usize) -> BigRational {
    integer(n as i64)
}

/// Albright integrals `int u^m A B du` for `A'' = uA`, `B'' = uB`.
#[derive(Debug, Default)]
struct Albright {
    memo: HashMap<usize, BilinearForm>,
}

impl Albright {
    fn get(&mut self, m: usize) -> BilinearForm {
        if let Some(f) = self.memo.get(&m) {
            return f.clone();
        }
        let zero = BigRational::zero();
        let mf = int(m);
        let mut ab = RationalPolynomial::monomial(integer(1), m + 1);
        let mut sym = RationalPolynomial::zero();
        if m >= 2 {
            let c = int(m * (m - 1)) / integer(2);
            ab = &ab - &RationalPolynomial::monomial(c, m - 2);
        }
        if m >= 1 {
            sym = RationalPolynomial::monomial(&mf / integer(2), m - 1);
        }
        let apbp = -&monomial(m);
        let mut form = BilinearForm::new(ab, sym.clone(), sym, apbp, zero.clone(), zero);
        if m >= 3 {
            let c = int(m * (m - 1) * (m - 2)) / integer(2);
            form = &form + &self.get(m - 3).scale(&c);
        }
        let form = form.scale(&(integer(1) / int(2 * m + 1)));
        self.memo.insert(m, form.clone());
        form
    }
}

/// Per-request memo tables for one ordered shift pair.
#[derive(Debug)]
struct Reducer {
    a: BigRational,
    b: BigRational,
    albright: Albright,
    ab: HashMap<usize, BilinearForm>,
    abp: HashMap<usize, BilinearForm>,
    apbp: HashMap<usize, BilinearForm>,
    swapped: Option<Box<Reducer>>,
}

impl Reducer {
    fn new(a: BigRational, b: BigRational) -> Self {
        Self {
            a,
            b,
            albright: Albright::default(),
            ab: HashMap::new(),
            abp: HashMap::new(),
            apbp: HashMap::new(),
            swapped: None,
        }
    }

    fn equal(&self) -> bool {
        self.a == self.b
    }

    fn zero_form(&self) -> BilinearForm {
        BilinearForm::zero(self.a.clone(), self.b.clone())
    }

    fn wronskian(&self, h: &RationalPolynomial, orientation: WronskianOrientation) -> BilinearForm {
        wronskian_form(h, orientation, self.a.clone(), self.b.clone())
    }

    fn ab(&mut self, n: usize) -> BilinearForm {
        if let Some(f) = self.ab.get(&n) {
            return f.clone();
        }
        let form = if self.equal() {
            self.ab_equal(n)
        } else {
            self.ab_distinct(n)
        };
        self.ab.insert(n, form.clone());
        form
    }

    /// `x^n = sum C(n,k) (-s)^(n-k) u^k` with `u = x + s`, then back to `x`.
    fn ab_equal(&mut self, n: usize) -> BilinearForm {
        let s = self.a.clone();
        let neg_s = -&s;
        let zero = BigRational::zero();
        let mut acc = BilinearForm::zero(zero.clone(), zero);
        let mut binom = integer(1);
        for k in (0..=n).rev() {
            // coefficient of u^k is C(n, k) (-s)^(n-k)
            let power = num_traits::pow(neg_s.clone(), n - k);
            let c = &binom * power;
            if !c.is_zero() {
                acc = &acc + &self.albright.get(k).scale(&c);
            }
            if k > 0 {
                binom = binom * int(k) / int(n - k + 1);
            }
        }
        acc.compose_shift(&s).with_shifts(s.clone(), s)
    }

    fn ab_distinct(&mut self, n: usize) -> BilinearForm {
        let d = &self.a - &self.b;
        if n == 0 {
            // W(A, B)' = (b - a) AB
            let w = self.wronskian(&RationalPolynomial::one(), WronskianOrientation::AgainstB);
            return w.scale(&(integer(1) / (&self.b - &self.a)));
        }
        let nf = int(n);
        let f = RationalPolynomial::monomial(nf.clone(), n - 1);
        let df = f.differentiate();
        let big_f = monomial(n);

        // I[f] + 2 I[x f'] = n (2n - 1) I[x^(n-1)]
        let mut inner = self.ab(n - 1).scale(&int(n * (2 * n - 1)));
        if n >= 2 {
            let c = (&self.a + &self.b) * int(n * (n - 1));
            if !c.is_zero() {
                inner = &inner + &self.ab(n - 2).scale(&c);
            }
        }
        if n >= 4 {
            let c = int(n * (n - 1) * (n - 2) * (n - 3)) / integer(2);
            inner = &inner - &self.ab(n - 4).scale(&c);
        }
        inner = &inner - &self.wronskian(&f, WronskianOrientation::AgainstBPrime);
        inner = &inner + &self.wronskian(&df, WronskianOrientation::AgainstB).scale(&rational(1, 2));
        inner = &inner
            - &self
                .wronskian(&big_f, WronskianOrientation::AgainstB)
                .scale(&(&d / integer(2)));
        inner.scale(&(integer(2) / (&d * &d)))
    }

    fn abp(&mut self, n: usize) -> BilinearForm {
        if let Some(f) = self.abp.get(&n) {
            return f.clone();
        }
        let d = &self.a - &self.b;
        let inv = integer(1) / int(n + 1);
        let g = RationalPolynomial::monomial(inv.clone(), n + 1);
        let mut form = self
            .wronskian(&g, WronskianOrientation::AgainstB)
            .scale(&rational(1, 2));
        if !d.is_zero() {
            form = &form + &self.ab(n + 1).scale(&(&d / integer(2) * &inv));
        }
        if n >= 1 {
            form = &form - &self.ab(n - 1).scale(&(int(n) / integer(2)));
        }
        self.abp.insert(n, form.clone());
        form
    }

    fn apb(&mut self, n: usize) -> BilinearForm {
        let (a, b) = (self.a.clone(), self.b.clone());
        self.swapped
            .get_or_insert_with(|| Box::new(Reducer::new(b, a)))
            .abp(n)
            .swap()
    }

    fn apbp(&mut self, n: usize) -> BilinearForm {
        if let Some(f) = self.apbp.get(&n) {
            return f.clone();
        }
        let mut form = BilinearForm::single(Pattern::ApB, monomial(n), self.a.clone(), self.b.clone());
        if n >= 1 {
            form = &form - &self.apb(n - 1).scale(&int(n));
        }
        form = &form - &self.ab(n + 1);
        if !self.a.is_zero() {
            let a = self.a.clone();
            form = &form - &self.ab(n).scale(&a);
        }
        self.apbp.insert(n, form.clone());
        form
    }

    fn pattern(&mut self, pattern: Pattern, n: usize) -> BilinearForm {
        match pattern {
            Pattern::AB => self.ab(n),
            Pattern::ABp => self.abp(n),
            Pattern::ApB => self.apb(n),
            Pattern::ApBp => self.apbp(n),
        }
    }

    fn poly(&mut self, f: &RationalPolynomial, pattern: Pattern) -> BilinearForm {
        let mut acc = self.zero_form();
        for (k, c) in f.terms() {
            acc = &acc + &self.pattern(pattern, k).scale(c);
        }
        acc
    }
}

/// `int x^n A B dx` for `A`, `B` sharing the shift `shift`.
pub fn antider_ab_equal(n: usize, shift: &BigRational) -> BilinearForm {
    Reducer::new(shift.clone(), shift.clone()).ab(n)
}

/// `int x^n A B dx` for distinct shifts, from the master equation.
pub fn antider_ab_distinct(
    n: usize,
    shift_a: &BigRational,
    shift_b: &BigRational,
) -> Result<BilinearForm> {
    if shift_a == shift_b {
        return Err(Error::EqualShifts(shift_a.clone()));
    }
    Ok(Reducer::new(shift_a.clone(), shift_b.clone()).ab(n))
}

/// `int x^n A B' dx`.
pub fn antider_abp(n: usize, shift_a: &BigRational, shift_b: &BigRational) -> BilinearForm {
    Reducer::new(shift_a.clone(), shift_b.clone()).abp(n)
}

/// `int x^n A' B dx`.
pub fn antider_apb(n: usize, shift_a: &BigRational, shift_b: &BigRational) -> BilinearForm {
    antider_abp(n, shift_b, shift_a).swap()
}

/// `int x^n A' B' dx`.
pub fn antider_apbp(n: usize, shift_a: &BigRational, shift_b: &BigRational) -> BilinearForm {
    Reducer::new(shift_a.clone(), shift_b.clone()).apbp(n)
}

/// Antiderivative of `f * pattern` for a general polynomial weight.
pub fn antider_poly(req: &ReductionRequest) -> BilinearForm {
    Reducer::new(req.shift_a.clone(), req.shift_b.clone()).poly(&req.f, req.pattern)
}

/// True iff `G' = f * pattern` exactly.
pub fn differentiate_back_check(g: &BilinearForm, f: &RationalPolynomial, pattern: Pattern) -> bool {
    let target = BilinearForm::single(pattern, f.clone(), g.shift_a().clone(), g.shift_b().clone());
    g.differentiate() == target
}
