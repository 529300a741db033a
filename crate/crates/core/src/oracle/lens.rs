//! Exact lens integrals through the cosine-power recursion on `[pi/6, pi/2]`.

use std::fmt;

use num_traits::Zero;

use crate::ball::Ball;
use crate::error::Result;
use crate::specfun::{rat, unit_ball_volume, Rational};

/// `a + b sqrt3 + c pi`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LensExact {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl LensExact {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        LensExact { a, b, c }
    }

    pub fn add(&self, o: &LensExact) -> LensExact {
        LensExact::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c)
    }

    pub fn sub(&self, o: &LensExact) -> LensExact {
        LensExact::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c)
    }

    pub fn scale(&self, q: &Rational) -> LensExact {
        LensExact::new(&self.a * q, &self.b * q, &self.c * q)
    }

    /// `q` with `self = q * other`, if the two are rational multiples.
    pub fn ratio_to(&self, other: &LensExact) -> Option<Rational> {
        let pairs = [(&self.a, &other.a), (&self.b, &other.b), (&self.c, &other.c)];
        let mut q: Option<Rational> = None;
        for (x, y) in pairs {
            if y.is_zero() {
                if !x.is_zero() {
                    return None;
                }
                continue;
            }
            let r = x / y;
            if q.as_ref().is_some_and(|q| *q != r) {
                return None;
            }
            q = Some(r);
        }
        q
    }

    pub fn to_ball(&self, prec: u32) -> Ball {
        let wp = prec + 16;
        let s3 = Ball::from_int(3, wp).sqrt().expect("positive");
        Ball::from_rational(&self.a, wp)
            .add(&s3.mul_rational(&self.b))
            .add(&Ball::pi(wp).mul_rational(&self.c))
            .with_prec(prec)
    }
}

impl fmt::Display for LensExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [(&self.a, ""), (&self.b, "√3"), (&self.c, "π")]
            .into_iter()
            .filter(|(v, _)| !v.is_zero())
            .map(|(v, u)| if u.is_empty() { format!("{v}") } else { format!("({v}){u}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `(sqrt3 / 2)^p`
fn half_sqrt3_pow(p: u32) -> LensExact {
    let q = num_traits::pow(rat(3, 4), (p / 2) as usize);
    if p.is_multiple_of(2) {
        LensExact::new(q, Rational::zero(), Rational::zero())
    } else {
        LensExact::new(Rational::zero(), q * rat(1, 2), Rational::zero())
    }
}

/// `I_m = int_{pi/6}^{pi/2} cos^m`, from `I_0 = pi/3`, `I_1 = 1/2` and
/// `I_m = -(sqrt3/2)^(m-1) / (2m) + (m-1)/m I_{m-2}`.
pub fn cos_power_integral(m: u32) -> LensExact {
    let (mut cur, mut j) = if m.is_multiple_of(2) {
        (LensExact::new(Rational::zero(), Rational::zero(), rat(1, 3)), 2)
    } else {
        (LensExact::new(rat(1, 2), Rational::zero(), Rational::zero()), 3)
    };
    while j <= m {
        let jj = j as i64;
        cur = cur.scale(&rat(jj - 1, jj)).sub(&half_sqrt3_pow(j - 1).scale(&rat(1, 2 * jj)));
        j += 2;
    }
    cur
}

/// Cap area and lens volume divided by `omega_{n-1}`:
/// `(n-1) I_{n-2}` and `2 I_n`.
pub fn lens_exact_wallis(n: u32) -> (LensExact, LensExact) {
    assert!(n >= 3, "lens_exact_wallis needs n >= 3");
    let cap = cos_power_integral(n - 2).scale(&Rational::from_integer((n as i64 - 1).into()));
    let vol = cos_power_integral(n).scale(&rat(2, 1));
    (cap, vol)
}

/// The lens energy assembled from the exact parts:
/// `omega_{n-1}^(1/n) (2 cap - (sqrt3/2)^(n-1)) / vol^((n-1)/n)`.
pub fn lens_exact_lambda(n: u32, prec: u32) -> Result<Ball> {
    let (cap, vol) = lens_exact_wallis(n);
    let wp = prec + 32;
    let num = cap.scale(&rat(2, 1)).sub(&half_sqrt3_pow(n - 1));
    let ni = n as i64;
    let omega = unit_ball_volume(n - 1, wp);
    let out = omega
        .pow_rational(1, ni)?
        .mul(&num.to_ball(wp))
        .div(&vol.to_ball(wp).pow_rational(ni - 1, ni)?)?;
    Ok(out.with_prec(prec))
}
