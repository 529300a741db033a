//! The standard lens and its renormalized energy.

use super::escalate::{escalate, PrecisionPolicy};
use crate::ball::Ball;
use crate::error::Result;
use crate::specfun::{gamma_half, gauss_2f1, rat, unit_ball_volume, HalfGamma};

#[derive(Clone, Debug)]
pub struct LensQuantities {
    pub n: u32,
    /// Area of one spherical cap.
    pub cap_area: Ball,
    pub lens_volume: Ball,
    /// `omega_{n-1} (sqrt(3)/2)^(n-1)`, the flat disc spanned by the rim.
    pub disc_term: Ball,
    pub lambda_plane: Ball,
}

impl LensQuantities {
    /// Recomputes the energy from the stored components.
    pub fn reassemble(&self) -> Result<Ball> {
        assemble(self.n, &self.cap_area, &self.lens_volume, &self.disc_term)
    }
}

fn assemble(n: u32, cap: &Ball, vol: &Ball, disc: &Ball) -> Result<Ball> {
    let num = cap.mul_2exp(1).sub(disc);
    num.div(&vol.pow_rational(n as i64 - 1, n as i64)?)
}

/// Bits lost when the `2F1` value is subtracted from the complete integral:
/// the difference decays like `(3/4)^(n/2)`.
fn cancellation_guard(n: u32) -> u32 {
    (n as f64 * 0.21) as u32 + 32
}

/// Lens quantities at working precision `prec`, through
/// `cap = (n-1) omega_{n-1} / 2 * (sqrt(pi) Gamma((n-1)/2) / Gamma(n/2) - 2F1(1/2, (3-n)/2; 3/2; 1/4))`
/// and
/// `vol = omega_{n-1} * (sqrt(pi) Gamma((n+1)/2) / Gamma(n/2 + 1) - 2F1(1/2, (1-n)/2; 3/2; 1/4))`.
pub fn lens_quantities(n: u32, prec: u32) -> Result<LensQuantities> {
    assert!(n >= 3, "lens_quantities needs n >= 3");
    let wp = prec + cancellation_guard(n);
    let ni = n as i64;
    let sqrt_pi = HalfGamma { q: rat(1, 1), s: 1 };
    let quarter = Ball::from_rational(&rat(1, 4), wp);
    let omega = unit_ball_volume(n - 1, wp);

    let complete_cap = sqrt_pi.mul(&gamma_half(n - 1)).div(&gamma_half(n)).to_ball(wp);
    let f_cap = gauss_2f1(&rat(1, 2), &rat(3 - ni, 2), &rat(3, 2), &quarter)?;
    let cap = complete_cap.sub(&f_cap).mul(&omega).mul_int(ni - 1).mul_2exp(-1);

    let complete_vol = sqrt_pi.mul(&gamma_half(n + 1)).div(&gamma_half(n + 2)).to_ball(wp);
    let f_vol = gauss_2f1(&rat(1, 2), &rat(1 - ni, 2), &rat(3, 2), &quarter)?;
    let vol = complete_vol.sub(&f_vol).mul(&omega);

    let disc = Ball::from_rational(&rat(3, 4), wp)
        .sqrt()?
        .pow_int(ni - 1)?
        .mul(&omega);

    let (cap, vol, disc) = (cap.with_prec(prec), vol.with_prec(prec), disc.with_prec(prec));
    let lambda_plane = assemble(n, &cap, &vol, &disc)?;
    Ok(LensQuantities { n, cap_area: cap, lens_volume: vol, disc_term: disc, lambda_plane })
}

/// Escalates precision until `lambda_plane` is narrower than `width`.
pub fn lens_quantities_to_width(n: u32, width: f64, policy: PrecisionPolicy) -> Result<(LensQuantities, u32)> {
    escalate(policy, |p| {
        let q = lens_quantities(n, p)?;
        let ok = q.lambda_plane.width_upper() <= width;
        Ok((q, ok))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        let q8 = lens_quantities(8, 128).unwrap();
        assert!(q8.lambda_plane.width_upper() <= 1e-9);
        assert_eq!(q8.lambda_plane.to_fixed(8).as_deref(), Some("7.29128238"));
        let q16 = lens_quantities(16, 128).unwrap();
        assert_eq!(q16.lambda_plane.to_fixed(8).as_deref(), Some("11.72168941"));
    }

    #[test]
    fn n8_volume_closed_form() {
        let prec = 160;
        let q = lens_quantities(8, prec).unwrap();
        let s3 = Ball::from_int(3, prec).sqrt().unwrap();
        let inner = Ball::pi(prec).mul_int(560).sub(&s3.mul_int(837)).div_int(3072).unwrap();
        let expected = inner.mul(&unit_ball_volume(7, prec));
        assert!(q.lens_volume.intersects(&expected));
        assert!((q.lens_volume.to_f64() - 0.476115).abs() < 1e-6);
    }

    #[test]
    fn reassembly_is_exact() {
        for n in [3, 8, 13, 40] {
            let q = lens_quantities(n, 128).unwrap();
            assert_eq!(q.reassemble().unwrap(), q.lambda_plane);
            assert!(q.cap_area.is_positive() && q.lens_volume.is_positive() && q.disc_term.is_positive());
        }
    }
}
