use std::fmt;

use num_traits::{One, Zero};

use super::{rat, Rational};
use crate::ball::Ball;

/// Exact `q * sqrt(pi)^s`. Values of `gamma_half` always have `s` in {0, 1};
/// products and quotients may carry any integer power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfGamma {
    pub q: Rational,
    pub s: i32,
}

impl HalfGamma {
    pub fn mul(&self, other: &HalfGamma) -> HalfGamma {
        HalfGamma { q: &self.q * &other.q, s: self.s + other.s }
    }

    pub fn div(&self, other: &HalfGamma) -> HalfGamma {
        assert!(!other.q.is_zero(), "HalfGamma division by zero");
        HalfGamma { q: &self.q / &other.q, s: self.s - other.s }
    }

    pub fn scale(&self, r: &Rational) -> HalfGamma {
        HalfGamma { q: &self.q * r, s: self.s }
    }

    /// The exact rational value, if the `sqrt(pi)` power cancels.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.s == 0).then_some(&self.q)
    }

    pub fn to_ball(&self, prec: u32) -> Ball {
        let wp = prec + 16;
        let q = Ball::from_rational(&self.q, wp);
        let v = match self.s {
            0 => q,
            s => {
                let pi = Ball::pi(wp);
                let p = pi.pow_int((s.abs() / 2) as i64).expect("pi^k");
                let p = if s % 2 != 0 { p.mul(&pi.sqrt().expect("pi > 0")) } else { p };
                if s > 0 {
                    q.mul(&p)
                } else {
                    q.div(&p).expect("pi^k > 0")
                }
            }
        };
        v.with_prec(prec)
    }
}

impl fmt::Display for HalfGamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.s {
            0 => write!(f, "{}", self.q),
            1 => write!(f, "{}*sqrt(pi)", self.q),
            s => write!(f, "{}*sqrt(pi)^{}", self.q, s),
        }
    }
}

/// `Gamma(two_x / 2)` exactly.
pub fn gamma_half(two_x: u32) -> HalfGamma {
    assert!(two_x >= 1, "gamma_half needs a positive argument");
    let (mut g, mut x2) = if two_x.is_multiple_of(2) {
        (HalfGamma { q: Rational::one(), s: 0 }, 2u32)
    } else {
        (HalfGamma { q: Rational::one(), s: 1 }, 1u32)
    };
    while x2 < two_x {
        g = g.scale(&rat(x2 as i64, 2));
        x2 += 2;
    }
    g
}

/// `Gamma(a) Gamma(b) / Gamma(a + b)` for half-integer `a = two_a/2`, `b = two_b/2`.
pub fn beta_half(two_a: u32, two_b: u32) -> HalfGamma {
    gamma_half(two_a).mul(&gamma_half(two_b)).div(&gamma_half(two_a + two_b))
}

/// Volume of the unit ball in `R^m`: `pi^(m/2) / Gamma(m/2 + 1)`.
pub fn unit_ball_volume(m: u32, prec: u32) -> Ball {
    assert!(m >= 1, "unit_ball_volume needs m >= 1");
    HalfGamma { q: Rational::one(), s: m as i32 }.div(&gamma_half(m + 2)).to_ball(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        assert_eq!(gamma_half(1), HalfGamma { q: rat(1, 1), s: 1 });
        assert_eq!(gamma_half(7), HalfGamma { q: rat(15, 8), s: 1 });
        assert_eq!(gamma_half(10), HalfGamma { q: rat(24, 1), s: 0 });
        assert_eq!(gamma_half(2), HalfGamma { q: rat(1, 1), s: 0 });
    }

    #[test]
    fn gamma_recursion_exact() {
        for two_x in 1..60u32 {
            let lhs = gamma_half(two_x + 2);
            let rhs = gamma_half(two_x).scale(&rat(two_x as i64, 2));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn small_unit_balls() {
        let prec = 128;
        assert!(unit_ball_volume(1, prec).contains_rational(&rat(2, 1)));
        assert!(unit_ball_volume(2, prec).intersects(&Ball::pi(prec)));
        let w7 = Ball::pi(prec).pow_int(3).unwrap().mul_int(16).div_int(105).unwrap();
        let got = unit_ball_volume(7, prec);
        assert!(got.intersects(&w7));
        assert!((got.to_f64() - 4.724766).abs() < 1e-6);
    }

    #[test]
    fn unit_ball_recurrence() {
        let prec = 160;
        let two_pi = Ball::pi(prec).mul_2exp(1);
        for m in 3..=40u32 {
            let lhs = unit_ball_volume(m, prec);
            let rhs = two_pi.mul(&unit_ball_volume(m - 2, prec)).div_int(m).unwrap();
            assert!(lhs.intersects(&rhs), "m = {m}");
        }
    }
}
