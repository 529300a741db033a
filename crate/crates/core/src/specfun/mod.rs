//! Certified special functions: half-integer Gamma, unit-ball volumes,
//! Gauss 2F1, Appell F1 and the incomplete beta function.

mod appell;
mod beta;
mod closed_form;
mod gamma;
mod hyp2f1;
mod poly;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

pub use appell::{appell_f1, appell_f1_diagonal, appell_f1_iterated, appell_f1_quadrature, QuadOptions};
pub use beta::incomplete_beta;
pub use closed_form::{closed_form_recursion, ClosedForm2F1};
pub use gamma::{beta_half, gamma_half, unit_ball_volume, HalfGamma};
pub use hyp2f1::{gauss_2f1, gauss_2f1_partial_sum, gauss_2f1_truncated, gauss_2f1_with_tail, SeriesTail};
pub use poly::Poly;

/// Exact rationals (always reduced).
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `Some(m)` when `q = -m` for a natural number `m`.
pub(crate) fn nonpositive_integer(q: &Rational) -> Option<u64> {
    if q.is_integer() && !q.is_positive() {
        (-q).to_integer().to_u64()
    } else {
        None
    }
}
