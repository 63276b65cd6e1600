//! Exact symbolic layer: rational polynomials and bilinear Airy forms.

mod form;
mod poly;

pub use form::{
    wronskian_form, x_plus, BilinearForm, FormCoefficients, FormRecord, NumericForm, Pattern,
    WronskianOrientation,
};
pub use poly::{horner, integer, parse_rational, rational, RationalPolynomial};
