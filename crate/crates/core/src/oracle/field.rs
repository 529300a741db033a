//! Exact arithmetic in `Q(sqrt 2, sqrt 3)` on the basis `1, sqrt 2, sqrt 3, sqrt 6`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ball::Ball;
use crate::specfun::Rational;

/// `a + b sqrt2 + c sqrt3 + d sqrt6`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt23 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl QSqrt23 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        QSqrt23 { a, b, c, d }
    }

    pub fn from_rational(q: Rational) -> Self {
        QSqrt23::new(q, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |v: i64| Rational::from_integer(v.into());
        QSqrt23::new(r(a), r(b), r(c), r(d))
    }

    pub fn zero() -> Self {
        QSqrt23::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        QSqrt23::from_rational(Rational::one())
    }

    pub fn sqrt2() -> Self {
        QSqrt23::from_ints(0, 1, 0, 0)
    }

    pub fn sqrt3() -> Self {
        QSqrt23::from_ints(0, 0, 1, 0)
    }

    pub fn sqrt6() -> Self {
        QSqrt23::from_ints(0, 0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn coeffs(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QSqrt23::new(&self.a * q, &self.b * q, &self.c * q, &self.d * q)
    }

    /// `sqrt2 -> -sqrt2`
    pub fn conj2(&self) -> Self {
        QSqrt23::new(self.a.clone(), -&self.b, self.c.clone(), -&self.d)
    }

    /// `sqrt3 -> -sqrt3`
    pub fn conj3(&self) -> Self {
        QSqrt23::new(self.a.clone(), self.b.clone(), -&self.c, -&self.d)
    }

    /// Product of all four conjugates, a rational.
    pub fn norm(&self) -> Rational {
        let half = self * &self.conj2();
        let full = &half * &half.conj3();
        debug_assert!(full.b.is_zero() && full.c.is_zero() && full.d.is_zero());
        full.a
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let c2 = self.conj2();
        let others = &(&c2 * &self.conj3()) * &c2.conj3();
        let n = (self * &others).a;
        Some(others.scale(&(Rational::one() / n)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = QSqrt23::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Positive rational `q` and integer-coefficient `p` with gcd 1 such that
    /// `self = q p`. `None` for zero.
    pub fn content(&self) -> Option<(Rational, QSqrt23)> {
        if self.is_zero() {
            return None;
        }
        let den = self.coeffs().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self.coeffs().iter().map(|x| (*x * Rational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let q = Rational::new(g.clone(), den);
        let p: Vec<Rational> = ints.iter().map(|x| Rational::from_integer(x / &g)).collect();
        Some((q, QSqrt23::new(p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone())))
    }

    /// Ball enclosing the exact value.
    pub fn to_ball(&self, prec: u32) -> Ball {
        let wp = prec + 16;
        let s2 = Ball::from_int(2, wp).sqrt().expect("positive");
        let s3 = Ball::from_int(3, wp).sqrt().expect("positive");
        let s6 = Ball::from_int(6, wp).sqrt().expect("positive");
        Ball::from_rational(&self.a, wp)
            .add(&s2.mul_rational(&self.b))
            .add(&s3.mul_rational(&self.c))
            .add(&s6.mul_rational(&self.d))
            .with_prec(prec)
    }
}

impl Add for &QSqrt23 {
    type Output = QSqrt23;
    fn add(self, o: &QSqrt23) -> QSqrt23 {
        QSqrt23::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }
}

impl Sub for &QSqrt23 {
    type Output = QSqrt23;
    fn sub(self, o: &QSqrt23) -> QSqrt23 {
        QSqrt23::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }
}

impl Neg for &QSqrt23 {
    type Output = QSqrt23;
    fn neg(self) -> QSqrt23 {
        QSqrt23::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Mul for &QSqrt23 {
    type Output = QSqrt23;
    fn mul(self, o: &QSqrt23) -> QSqrt23 {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        let two = Rational::from_integer(2.into());
        let three = Rational::from_integer(3.into());
        let six = Rational::from_integer(6.into());
        // sqrt2 sqrt3 = sqrt6, sqrt2 sqrt6 = 2 sqrt3, sqrt3 sqrt6 = 3 sqrt2
        QSqrt23::new(
            a * e + &two * (b * f) + &three * (c * g) + &six * (d * h),
            a * f + b * e + &three * (c * h + d * g),
            a * g + c * e + &two * (b * h + d * f),
            a * h + d * e + b * g + c * f,
        )
    }
}

impl fmt::Display for QSqrt23 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, unit) in [(&self.a, ""), (&self.b, "√2"), (&self.c, "√3"), (&self.d, "√6")] {
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            match (first, v.is_negative()) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            if unit.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{unit}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_table() {
        let s2 = QSqrt23::sqrt2();
        let s3 = QSqrt23::sqrt3();
        let s6 = QSqrt23::sqrt6();
        assert_eq!(&s2 * &s2, QSqrt23::from_ints(2, 0, 0, 0));
        assert_eq!(&s2 * &s3, s6);
        assert_eq!(&s2 * &s6, QSqrt23::from_ints(0, 0, 2, 0));
        assert_eq!(&s3 * &s6, QSqrt23::from_ints(0, 3, 0, 0));
        assert_eq!(&s6 * &s6, QSqrt23::from_ints(6, 0, 0, 0));
    }

    #[test]
    fn inverse_and_embedding() {
        let x = QSqrt23::from_ints(1, -2, 3, 5);
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, QSqrt23::one());
        let xb = x.to_ball(128);
        assert!(xb.mul(&y.to_ball(128)).intersects(&Ball::one(128)));
        assert!(QSqrt23::zero().inverse().is_none());
    }

    #[test]
    fn content_split() {
        let x = QSqrt23::from_ints(6, -4, 10, 0).scale(&Rational::new(1.into(), 7.into()));
        let (q, p) = x.content().unwrap();
        assert_eq!(q, Rational::new(2.into(), 7.into()));
        assert_eq!(p, QSqrt23::from_ints(3, -2, 5, 0));
        assert_eq!(format!("{p}"), "3 - 2√2 + 5√3");
    }
}
