//! `M(k, k)` for odd `k` in exact arithmetic.
//!
//! With `k = l` the constants are `r = rho = sqrt6 + sqrt2` and
//! `h = d = 1 + sqrt3`, so the volume and renormalized perimeter, divided by
//! `omega_{k+1}^2`, are elements `V` and `N` of `Q(sqrt2, sqrt3)`. Then
//! `M(k, k) = omega_{k+1}^(2/n) N / V^((n-1)/n)` with `n = 2k + 2`.
//!
//! Normalization: `num` and `den` are the primitive integer parts of `N` and
//! `V` (coefficients with gcd 1), and `num_scale`, `den_scale` the positive
//! rationals with `N = num_scale * num` and `V = den_scale * den`. For
//! `k = 3` this gives `N = 16/105 num`, `V = 8/105 den`.

use num_traits::ToPrimitive;

use super::field::QSqrt23;
use super::polynomial::arc_polynomial_integral;
use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::specfun::{rat, unit_ball_volume, Rational};

#[derive(Clone, Debug)]
pub struct SimonsExact {
    pub k: u32,
    /// `|E| / omega^2`
    pub volume: QSqrt23,
    /// `(perimeter - cone_disc) / omega^2`
    pub energy: QSqrt23,
    pub num: QSqrt23,
    pub num_scale: Rational,
    pub den: QSqrt23,
    pub den_scale: Rational,
    pub assembled: Ball,
}

/// Exact field elements for `M(k, k)` and the assembled ball at `prec` bits.
pub fn exact_simons_m(k: u32, prec: u32) -> Result<SimonsExact> {
    if k.is_multiple_of(2) {
        return Err(Error::UnsupportedDimension { n: 2 * k + 2, reason: "the exact field path needs odd k" });
    }
    let ki = k as i64;
    let one = QSqrt23::one();
    let r = &QSqrt23::sqrt6() + &QSqrt23::sqrt2();
    let h = &one + &QSqrt23::sqrt3();
    let top = &r - &h;
    let u_vol = arc_polynomial_integral(k, k.div_ceil(2), &r, &h, &one, &top);
    let u_per = arc_polynomial_integral(k, (k - 1) / 2, &r, &h, &one, &top);
    let volume = &one + &u_vol.scale(&rat(2 * (ki + 1), 1));
    let kk = rat((ki + 1) * (ki + 1), 1);
    let cone = QSqrt23::sqrt2().scale(&(&kk / rat(2 * ki + 1, 1)));
    let energy = &(&r * &u_per).scale(&(kk * rat(2, 1))) - &cone;
    let (num_scale, num) = energy.content().expect("nonzero energy");
    let (den_scale, den) = volume.content().expect("nonzero volume");

    let n = (2 * k + 2) as i64;
    let wp = prec + 32;
    let omega = unit_ball_volume(k + 1, wp);
    let assembled = omega
        .pow_rational(2, n)?
        .mul(&energy.to_ball(wp))
        .div(&volume.to_ball(wp).pow_rational(n - 1, n)?)?
        .with_prec(prec);
    Ok(SimonsExact { k, volume, energy, num, num_scale, den, den_scale, assembled })
}

impl SimonsExact {
    /// Integer coefficients `[a, b, c, d]` of a primitive element.
    pub fn integer_coeffs(x: &QSqrt23) -> Option<[i64; 4]> {
        let mut out = [0i64; 4];
        for (o, c) in out.iter_mut().zip(x.coeffs()) {
            if !c.is_integer() {
                return None;
            }
            *o = c.to_integer().to_i64()?;
        }
        Some(out)
    }
}
