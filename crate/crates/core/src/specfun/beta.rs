use num_traits::{One, Signed, ToPrimitive};

use super::gamma::beta_half;
use super::hyp2f1::gauss_2f1;
use super::Rational;
use crate::ball::{Ball, BigFloat};
use crate::error::{Error, Result};

/// Incomplete beta `B(z; a, b) = int_0^z s^(a-1) (1-s)^(b-1) ds`, through
/// `B(z; a, b) = z^a / a * 2F1(a, 1 - b; a + 1; z)`. At exactly `z = 1` the
/// complete value `Gamma(a) Gamma(b) / Gamma(a + b)` is used (half-integer
/// `a`, `b` only).
pub fn incomplete_beta(z: &Ball, a: &Rational, b: &Rational) -> Result<Ball> {
    if !a.is_positive() {
        return Err(Error::DomainViolation("incomplete_beta needs a > 0"));
    }
    let prec = z.prec();
    if z.is_exact() && *z.mid() == BigFloat::one() {
        let two = Rational::from_integer(2.into());
        let (ta, tb) = (a * &two, b * &two);
        if !(ta.is_integer() && tb.is_integer() && b.is_positive()) {
            return Err(Error::DomainViolation("complete beta needs positive half-integers"));
        }
        let (ta, tb) = (ta.to_integer().to_u32(), tb.to_integer().to_u32());
        let (Some(ta), Some(tb)) = (ta, tb) else {
            return Err(Error::DomainViolation("complete beta argument too large"));
        };
        return Ok(beta_half(ta, tb).to_ball(prec));
    }
    if !z.is_positive() {
        return Err(Error::DomainViolation("incomplete_beta needs z > 0"));
    }
    let (p, q) = match (a.numer().to_i64(), a.denom().to_i64()) {
        (Some(p), Some(q)) => (p, q),
        _ => return Err(Error::DomainViolation("incomplete_beta parameter too large")),
    };
    let wp = prec + 16;
    let zw = z.with_prec(wp);
    let f = gauss_2f1(a, &(Rational::one() - b), &(a + Rational::one()), &zw)?;
    let za = zw.pow_rational(p, q)?;
    Ok(za.mul(&f).div(&Ball::from_rational(a, wp))?.with_prec(prec))
}
