use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::bigfloat::{BigFloat, Round};
use super::mag::Mag;
use crate::error::{Error, Result};

/// Three-valued answer of a predicate evaluated on balls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum TriBool {
    CertainlyTrue,
    CertainlyFalse,
    Unknown,
}

impl TriBool {
    pub fn is_true(self) -> bool {
        self == TriBool::CertainlyTrue
    }
}

/// A real number enclosure `[mid - rad, mid + rad]` carried at a working
/// precision of `prec` bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ball {
    mid: BigFloat,
    rad: Mag,
    prec: u32,
}

impl Ball {
    pub fn new(mid: BigFloat, rad: Mag, prec: u32) -> Self {
        Ball { mid, rad, prec }
    }

    /// Exact point ball; the midpoint is stored without rounding.
    pub fn exact(mid: BigFloat, prec: u32) -> Self {
        Ball { mid, rad: Mag::zero(), prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(BigFloat::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::exact(BigFloat::one(), prec)
    }

    pub fn from_int<T: Into<BigInt>>(v: T, prec: u32) -> Self {
        Self::exact(BigFloat::from_int(v), prec)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64, prec: u32) -> Self {
        Self::exact(BigFloat::from_f64(v).expect("finite f64"), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let num = BigFloat::from_int(q.numer().clone());
        if q.denom().is_one() {
            return Self::exact(num, prec).rounded();
        }
        let den = BigFloat::from_int(q.denom().clone());
        let (mid, err) = num.div_round(&den, prec as u64, Round::Nearest);
        Ball { mid, rad: err, prec }
    }

    /// Smallest ball containing both endpoints `lo <= hi`.
    pub fn from_endpoints(lo: &BigFloat, hi: &BigFloat, prec: u32) -> Self {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let (mid, _) = lo.add_exact(hi).mul_2exp(-1).round_err(prec as u64, Round::Nearest);
        let r1 = hi.sub_exact(&mid);
        let r2 = mid.sub_exact(lo);
        let rad = Mag::from_bigfloat_upper(&r1).max(Mag::from_bigfloat_upper(&r2));
        Ball { mid, rad, prec }
    }

    pub fn mid(&self) -> &BigFloat {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Ball { mid: self.mid.clone(), rad: self.rad, prec }.rounded()
    }

    /// Rounds an over-long midpoint to the working precision.
    fn rounded(mut self) -> Self {
        if self.mid.bits() > self.prec as u64 {
            let (m, e) = self.mid.round_err(self.prec as u64, Round::Nearest);
            self.mid = m;
            self.rad = self.rad.add_up(&e);
        }
        self
    }

    /// Widens the radius by `err`.
    pub fn add_error(&self, err: &Mag) -> Self {
        Ball { mid: self.mid.clone(), rad: self.rad.add_up(err), prec: self.prec }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Lower endpoint, rounded down.
    pub fn lower(&self) -> BigFloat {
        if self.rad.is_zero() {
            return self.mid.clone();
        }
        self.mid
            .sub_round(&self.rad.to_bigfloat(), self.prec as u64 + 64, Round::Floor)
            .0
    }

    /// Upper endpoint, rounded up.
    pub fn upper(&self) -> BigFloat {
        if self.rad.is_zero() {
            return self.mid.clone();
        }
        self.mid
            .add_round(&self.rad.to_bigfloat(), self.prec as u64 + 64, Round::Ceil)
            .0
    }

    /// Upper bound of `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        Mag::from_bigfloat_upper(&self.mid).add_up(&self.rad)
    }

    /// Lower bound of `|x|` over the ball (zero if the ball contains zero).
    pub fn abs_lower(&self) -> Mag {
        if self.contains_zero() {
            return Mag::zero();
        }
        let m = self.mid.abs();
        let (d, _) = m.sub_round(&self.rad.to_bigfloat(), 64, Round::Floor);
        if d.is_positive() {
            Mag::from_bigfloat_lower(&d)
        } else {
            Mag::zero()
        }
    }

    /// Upper bound of the diameter as `f64`.
    pub fn width_upper(&self) -> f64 {
        self.rad.mul_2exp(1).to_f64_upper()
    }

    /// Nearest `f64` to the midpoint.
    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lower().is_positive() && !self.upper().is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    pub fn contains_bigfloat(&self, x: &BigFloat) -> bool {
        let d = x.sub_exact(&self.mid).abs();
        d <= self.rad.to_bigfloat()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let d = (q - self.mid.to_rational()).abs();
        d <= self.rad.to_bigfloat().to_rational()
    }

    /// True when `other` lies entirely inside `self`.
    pub fn contains(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn intersects(&self, other: &Ball) -> bool {
        !(self.upper() < other.lower() || other.upper() < self.lower())
    }

    /// Ball containing the union of both.
    pub fn union(&self, other: &Ball) -> Ball {
        let lo = self.lower().min(other.lower());
        let hi = self.upper().max(other.upper());
        Ball::from_endpoints(&lo, &hi, self.prec.max(other.prec))
    }

    /// `CertainlyTrue` iff `sup(self) < inf(other)`, `CertainlyFalse` iff
    /// `inf(self) > sup(other)`.
    pub fn certainly_less(&self, other: &Ball) -> TriBool {
        if self.upper() < other.lower() {
            TriBool::CertainlyTrue
        } else if self.lower() > other.upper() {
            TriBool::CertainlyFalse
        } else {
            TriBool::Unknown
        }
    }

    fn op_prec(&self, other: &Ball) -> u32 {
        self.prec.max(other.prec)
    }

    pub fn add(&self, other: &Ball) -> Ball {
        let prec = self.op_prec(other);
        let (mid, err) = self.mid.add_round(&other.mid, prec as u64, Round::Nearest);
        let rad = self.rad.add_up(&other.rad).add_up(&err);
        Ball { mid, rad, prec }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: self.mid.neg(), rad: self.rad, prec: self.prec }
    }

    pub fn abs(&self) -> Ball {
        if !self.contains_zero() {
            if self.mid.is_negative() {
                return self.neg();
            }
            return self.clone();
        }
        let hi = self.upper().max(self.lower().neg());
        Ball::from_endpoints(&BigFloat::zero(), &hi, self.prec)
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let prec = self.op_prec(other);
        let (mid, err) = self.mid.mul_round(&other.mid, prec as u64, Round::Nearest);
        let ma = Mag::from_bigfloat_upper(&self.mid);
        let mb = Mag::from_bigfloat_upper(&other.mid);
        let rad = ma
            .mul_up(&other.rad)
            .add_up(&mb.mul_up(&self.rad))
            .add_up(&self.rad.mul_up(&other.rad))
            .add_up(&err);
        Ball { mid, rad, prec }
    }

    pub fn sqr(&self) -> Ball {
        if self.contains_zero() && !self.rad.is_zero() {
            // [0, max|x|^2] is tighter than the product formula here
            let m = self.mul(self);
            let hi = m.upper();
            return Ball::from_endpoints(&BigFloat::zero(), &hi, self.prec);
        }
        self.mul(self)
    }

    pub fn div(&self, other: &Ball) -> Result<Ball> {
        let prec = self.op_prec(other);
        let den_lower = other.abs_lower();
        if den_lower.is_zero() {
            return Err(Error::DivisionByIntervalContainingZero);
        }
        let (mid, err) = self.mid.div_round(&other.mid, prec as u64, Round::Nearest);
        let rad = if self.rad.is_zero() && other.rad.is_zero() {
            err
        } else {
            let q = Mag::from_bigfloat_upper(&mid).add_up(&err);
            self.rad
                .add_up(&q.mul_up(&other.rad))
                .div_up(&den_lower)
                .add_up(&err)
        };
        Ok(Ball { mid, rad, prec })
    }

    pub fn inv(&self) -> Result<Ball> {
        Ball::one(self.prec).div(self)
    }

    pub fn mul_2exp(&self, k: i64) -> Ball {
        Ball { mid: self.mid.mul_2exp(k), rad: self.rad.mul_2exp(k), prec: self.prec }
    }

    pub fn mul_int<T: Into<BigInt>>(&self, n: T) -> Ball {
        self.mul(&Ball::from_int(n, self.prec))
    }

    pub fn div_int<T: Into<BigInt>>(&self, n: T) -> Result<Ball> {
        self.div(&Ball::from_int(n, self.prec))
    }

    pub fn add_int<T: Into<BigInt>>(&self, n: T) -> Ball {
        self.add(&Ball::from_int(n, self.prec))
    }

    /// Multiplication by an exact rational (numerator first, then one division).
    pub fn mul_rational(&self, q: &BigRational) -> Ball {
        let num = self.mul(&Ball::from_int(q.numer().clone(), self.prec));
        if q.denom().is_one() {
            return num;
        }
        num.div(&Ball::from_int(q.denom().clone(), self.prec))
            .expect("rational denominators are positive")
    }

    pub fn add_rational(&self, q: &BigRational) -> Ball {
        self.add(&Ball::from_rational(q, self.prec))
    }

    /// Integer power by repeated squaring.
    pub fn pow_int(&self, n: i64) -> Result<Ball> {
        if n == 0 {
            return Ok(Ball::one(self.prec));
        }
        if n < 0 {
            return self.pow_int(-n)?.inv();
        }
        let mut base = self.clone();
        let mut acc: Option<Ball> = None;
        let mut e = n as u64;
        let mut first = true;
        while e > 0 {
            if !first {
                base = base.sqr();
            }
            first = false;
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
        }
        Ok(acc.expect("n > 0"))
    }
}

impl Add for &Ball {
    type Output = Ball;
    fn add(self, rhs: &Ball) -> Ball {
        Ball::add(self, rhs)
    }
}

impl Sub for &Ball {
    type Output = Ball;
    fn sub(self, rhs: &Ball) -> Ball {
        Ball::sub(self, rhs)
    }
}

impl Mul for &Ball {
    type Output = Ball;
    fn mul(self, rhs: &Ball) -> Ball {
        Ball::mul(self, rhs)
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::neg(self)
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {:.3e}]", self.to_decimal_string(20), self.rad.to_f64_upper())
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}
