//! Constants of the Lawson-cone competitor: two circular arcs meeting the
//! coordinate planes and the cone at the prescribed angles.

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::specfun::rat;

#[derive(Clone, Debug)]
pub struct LawsonConstants {
    pub k: u32,
    pub l: u32,
    /// `sqrt(k / l)`
    pub lambda: Ball,
    /// `arctan(lambda)`
    pub theta: Ball,
    pub h: Ball,
    pub r: Ball,
    pub d: Ball,
    pub rho: Ball,
}

impl LawsonConstants {
    pub fn n(&self) -> u32 {
        self.k + self.l + 2
    }

    /// `2 pi / 3 - theta`, where the `v`-arc starts.
    pub fn alpha(&self) -> Ball {
        let p = self.theta.prec();
        Ball::pi(p).mul_rational(&rat(2, 3)).sub(&self.theta)
    }

    /// `pi / 6 + theta`, where the `u`-arc starts.
    pub fn beta(&self) -> Ball {
        let p = self.theta.prec();
        Ball::pi(p).div_int(6).expect("nonzero").add(&self.theta)
    }

    /// `r^2 - (1 + h)^2`; should enclose `lambda^2`.
    pub fn corner_v(&self) -> Ball {
        self.r.sqr().sub(&self.h.add_int(1).sqr())
    }

    /// `rho^2 - (lambda + d)^2`; should enclose 1.
    pub fn corner_u(&self) -> Ball {
        self.rho.sqr().sub(&self.lambda.add(&self.d).sqr())
    }
}

/// `h = lambda tan(2pi/3 - theta) - 1`, `r = lambda sec(2pi/3 - theta)`,
/// `d = tan(pi/6 + theta) - lambda`, `rho = sec(pi/6 + theta)`.
///
/// The construction needs both arc centres on the positive axes and both
/// arcs to leave the cone inside the unit disc of the other variable; any
/// of these not certainly holding is `InvalidGeometry`.
pub fn lawson_constants(k: u32, l: u32, prec: u32) -> Result<LawsonConstants> {
    let invalid = Error::InvalidGeometry { k, l };
    if k == 0 || l == 0 {
        return Err(invalid);
    }
    let wp = prec + 24;
    let lambda = Ball::from_rational(&rat(k as i64, l as i64), wp).sqrt()?;
    let theta = lambda.arctan()?;
    let pi = Ball::pi(wp);
    let alpha = pi.mul_rational(&rat(2, 3)).sub(&theta);
    let beta = pi.div_int(6)?.add(&theta);
    let trig = |x: &Ball| -> Result<(Ball, Ball)> {
        let (s, c) = x.sin_cos()?;
        if !c.is_positive() {
            return Err(invalid.clone());
        }
        Ok((s.div(&c)?, c.inv()?))
    };
    let (tan_a, sec_a) = trig(&alpha)?;
    let (tan_b, sec_b) = trig(&beta)?;
    let h = lambda.mul(&tan_a).add_int(-1);
    let r = lambda.mul(&sec_a);
    let d = tan_b.sub(&lambda);
    let rho = sec_b;

    let gate = r.is_positive()
        && rho.is_positive()
        && h.is_positive()
        && d.is_positive()
        // lambda / (rho - d) < 1 and 1 / (r - h) < 1
        && rho.sub(&d).sub(&lambda).is_positive()
        && r.sub(&h).add_int(-1).is_positive();
    if !gate {
        return Err(invalid);
    }
    let round = |b: Ball| b.with_prec(prec);
    Ok(LawsonConstants {
        k,
        l,
        lambda: round(lambda),
        theta: round(theta),
        h: round(h),
        r: round(r),
        d: round(d),
        rho: round(rho),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_pair_is_exact_field_values() {
        let prec = 160;
        let c = lawson_constants(3, 3, prec).unwrap();
        let s2 = Ball::from_int(2, prec).sqrt().unwrap();
        let s3 = Ball::from_int(3, prec).sqrt().unwrap();
        let s6 = Ball::from_int(6, prec).sqrt().unwrap();
        assert!(c.h.intersects(&s3.add_int(1)));
        assert!(c.r.intersects(&s6.add(&s2)));
        assert!(c.d.intersects(&c.h) && c.rho.intersects(&c.r));
        assert!(c.theta.intersects(&Ball::pi(prec).mul_2exp(-2)));
        assert!(c.h.width_upper() < 1e-40);
    }

    #[test]
    fn corners() {
        for (k, l) in [(3, 3), (3, 4), (2, 5), (7, 4), (10, 11)] {
            let c = lawson_constants(k, l, 128).unwrap();
            assert!(c.corner_v().intersects(&c.lambda.sqr()), "({k},{l})");
            assert!(c.corner_u().intersects(&Ball::one(128)), "({k},{l})");
        }
    }

    #[test]
    fn unbalanced_pairs_are_refused() {
        assert_eq!(lawson_constants(1, 5, 128).unwrap_err(), Error::InvalidGeometry { k: 1, l: 5 });
        assert_eq!(lawson_constants(5, 1, 128).unwrap_err(), Error::InvalidGeometry { k: 5, l: 1 });
        // k / l = 1/3 puts the arc start exactly at pi/2
        assert!(lawson_constants(1, 3, 128).is_err());
        assert!(lawson_constants(3, 1, 128).is_err());
        assert!(lawson_constants(1, 2, 128).is_ok());
    }

    #[test]
    fn swap_is_homothety() {
        let a = lawson_constants(2, 5, 128).unwrap();
        let b = lawson_constants(5, 2, 128).unwrap();
        // (h, r, d, rho) of the swap are (d, rho, h, r) / lambda
        let s = |x: &Ball| x.div(&a.lambda).unwrap();
        assert!(b.h.intersects(&s(&a.d)) && b.r.intersects(&s(&a.rho)));
        assert!(b.d.intersects(&s(&a.h)) && b.rho.intersects(&s(&a.r)));
    }
}
