//! Arbitrary-size binary floating point numbers `mant * 2^exp`.
//!
//! Values are always normalized: the mantissa is odd, or the value is zero
//! with exponent zero. Arithmetic is either exact or rounded to a requested
//! number of bits in a requested direction.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mag::Mag;

/// Rounding direction for inexact operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Floor,
    /// Toward positive infinity.
    Ceil,
    /// Toward zero.
    Down,
    /// Away from zero.
    Up,
    /// To nearest; ties go away from zero.
    Nearest,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        BigFloat { mant: BigInt::one(), exp: 0 }
    }

    /// `mant * 2^exp`, normalized.
    pub fn from_parts(mant: BigInt, exp: i64) -> Self {
        let mut x = BigFloat { mant, exp };
        x.normalize();
        x
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Self::from_parts(v.into(), 0)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Self::zero());
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Self::from_parts(BigInt::from(m) * sign, e))
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    pub fn is_positive(&self) -> bool {
        self.mant.sign() == Sign::Plus
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Exponent of the leading bit plus one: `2^(top-1) <= |x| < 2^top`.
    /// Zero maps to `i64::MIN`.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, exp: self.exp }
    }

    /// Multiplication by `2^k`, exact.
    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Nearest `f64` (saturating to infinity, flushing to zero).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60, Round::Nearest);
        let m = r.mant.to_f64().unwrap_or(f64::NAN);
        let e = r.exp;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // split the scaling so that intermediate powers stay finite
        let half = e / 2;
        m * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    /// Round to at most `prec` significant bits.
    pub fn round(&self, prec: u64, mode: Round) -> Self {
        let prec = prec.max(1);
        let bits = self.mant.bits();
        if bits <= prec {
            return self.clone();
        }
        let s = bits - prec;
        let m = shift_round(&self.mant, s, mode);
        Self::from_parts(m, self.exp + s as i64)
    }

    /// Round and return an upper bound on the absolute rounding error.
    pub fn round_err(&self, prec: u64, mode: Round) -> (Self, Mag) {
        let r = self.round(prec, mode);
        if r == *self {
            (r, Mag::zero())
        } else {
            let bits = self.mant.bits();
            let s = bits - prec.max(1);
            (r, Mag::pow2(self.exp + s as i64))
        }
    }

    /// Exact sum.
    pub fn add_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        Self::from_parts(a + b, e)
    }

    pub fn sub_exact(&self, other: &Self) -> Self {
        self.add_exact(&other.neg())
    }

    pub fn mul_exact(&self, other: &Self) -> Self {
        Self::from_parts(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Rounded sum with an error bound. Operands far below the rounding
    /// position are truncated before the exact addition so the cost stays
    /// proportional to `prec`.
    pub fn add_round(&self, other: &Self, prec: u64, mode: Round) -> (Self, Mag) {
        if self.is_zero() {
            return other.round_err(prec, mode);
        }
        if other.is_zero() {
            return self.round_err(prec, mode);
        }
        let (big, small) = if self.top() >= other.top() { (self, other) } else { (other, self) };
        let cut = big.top() - prec as i64 - 64;
        if small.top() < cut && small.exp < cut {
            // replace the small operand by a truncation at exponent `cut`
            // in the direction that keeps directed results valid
            // the sum has the sign of `big`
            let dir = match (mode, big.is_positive()) {
                (Round::Floor, _) | (Round::Down, true) | (Round::Up, false) => Round::Floor,
                (Round::Ceil, _) | (Round::Down, false) | (Round::Up, true) => Round::Ceil,
                (Round::Nearest, _) => Round::Nearest,
            };
            let m = shift_round(&small.mant, (cut - small.exp) as u64, dir);
            let trunc = Self::from_parts(m, cut);
            let extra = Mag::pow2(cut);
            let (r, err) = big.add_exact(&trunc).round_err(prec, mode);
            return (r, err.add_up(&extra));
        }
        big.add_exact(small).round_err(prec, mode)
    }

    pub fn sub_round(&self, other: &Self, prec: u64, mode: Round) -> (Self, Mag) {
        self.add_round(&other.neg(), prec, mode)
    }

    pub fn mul_round(&self, other: &Self, prec: u64, mode: Round) -> (Self, Mag) {
        self.mul_exact(other).round_err(prec, mode)
    }

    /// Rounded quotient with an error bound; `other` must be nonzero.
    pub fn div_round(&self, other: &Self, prec: u64, mode: Round) -> (Self, Mag) {
        assert!(!other.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return (Self::zero(), Mag::zero());
        }
        let prec = prec.max(1);
        // quotient of mantissas with prec + 2 significant bits
        let na = self.mant.bits() as i64;
        let nb = other.mant.bits() as i64;
        let shift = (prec as i64 + 2 + nb - na).max(0);
        let num = &self.mant << shift as usize;
        let (q, rem) = num.div_rem(&other.mant);
        let exp = self.exp - other.exp - shift;
        if rem.is_zero() {
            return Self::from_parts(q, exp).round_err(prec, mode);
        }
        // exact value lies strictly between q and q +- 1 (same sign as the quotient)
        let negative = (self.is_negative()) != (other.is_negative());
        // q truncates toward zero; make it a sticky value by appending a 1 bit
        let sticky = (q << 1usize) + if negative { -1 } else { 1 };
        let approx = Self::from_parts(sticky, exp - 1);
        let (r, err) = approx.round_err(prec, mode);
        // the sticky bit shifts the value by less than 2^(exp-1)
        (r, err.add_up(&Mag::pow2(exp - 1)))
    }

    /// Square root rounded in the given direction; requires `self >= 0`.
    pub fn sqrt_round(&self, prec: u64, mode: Round) -> (Self, Mag) {
        assert!(!self.is_negative(), "BigFloat sqrt of a negative number");
        if self.is_zero() {
            return (Self::zero(), Mag::zero());
        }
        let prec = prec.max(1);
        let mut e = self.exp;
        let mut m = self.mant.magnitude().clone();
        let want = 2 * (prec as i64 + 2);
        let mut sh = (want - m.bits() as i64).max(0);
        if (e - sh) % 2 != 0 {
            sh += 1;
        }
        m <<= sh as usize;
        e -= sh;
        let r: BigUint = m.sqrt();
        let exact = &r * &r == m;
        let exp = e / 2;
        if exact {
            return Self::from_parts(BigInt::from(r), exp).round_err(prec, mode);
        }
        // r < root < r + 1
        let base = if matches!(mode, Round::Ceil | Round::Up) { r + 1u32 } else { r };
        let (res, err) = Self::from_parts(BigInt::from(base), exp).round_err(prec, mode);
        (res, err.add_up(&Mag::pow2(exp)))
    }

    /// Upper bound of `|self|` as a low-precision magnitude.
    pub fn abs_upper_mag(&self) -> Mag {
        Mag::from_bigfloat_upper(self)
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }
}

/// `m / 2^s` rounded to an integer in direction `mode`.
fn shift_round(m: &BigInt, s: u64, mode: Round) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    let floor = m >> s as usize; // arithmetic shift floors
    let exact = m.trailing_zeros().map(|tz| tz >= s).unwrap_or(true);
    if exact {
        return floor;
    }
    let neg = m.is_negative();
    match mode {
        Round::Floor => floor,
        Round::Ceil => floor + 1,
        Round::Down => {
            if neg {
                floor + 1
            } else {
                floor
            }
        }
        Round::Up => {
            if neg {
                floor
            } else {
                floor + 1
            }
        }
        Round::Nearest => {
            let half = BigInt::one() << (s - 1) as usize;
            if neg {
                -((-m + half) >> s as usize)
            } else {
                (m + half) >> s as usize
            }
        }
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // same sign: compare magnitudes by leading bit first
        let mag = if self.top() != other.top() {
            self.top().cmp(&other.top())
        } else {
            let e = self.exp.min(other.exp);
            let a = self.mant.magnitude() << (self.exp - e) as usize;
            let b = other.mant.magnitude() << (other.exp - e) as usize;
            a.cmp(&b)
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(v: f64) -> BigFloat {
        BigFloat::from_f64(v).unwrap()
    }

    #[test]
    fn normalized_mantissa_is_odd() {
        let x = BigFloat::from_int(48);
        assert_eq!(x.mantissa(), &BigInt::from(3));
        assert_eq!(x.exponent(), 4);
        assert_eq!(BigFloat::from_parts(BigInt::zero(), 17).exponent(), 0);
    }

    #[test]
    fn directed_rounding_brackets() {
        let third = BigFloat::one().div_round(&BigFloat::from_int(3), 200, Round::Nearest).0;
        let lo = third.round(20, Round::Floor);
        let hi = third.round(20, Round::Ceil);
        assert!(lo < third && third < hi);
        let nlo = third.neg().round(20, Round::Floor);
        assert_eq!(nlo, hi.neg());
    }

    #[test]
    fn division_error_bound_holds() {
        for (a, b) in [(1.0, 3.0), (-7.0, 11.0), (5.5, -0.1), (1e10, 7.0)] {
            let (q, err) = bf(a).div_round(&bf(b), 40, Round::Nearest);
            let exact = bf(a).to_rational() / bf(b).to_rational();
            let diff = (q.to_rational() - exact).abs();
            assert!(diff <= err.to_bigfloat().to_rational());
        }
    }

    #[test]
    fn sqrt_directed() {
        let two = BigFloat::from_int(2);
        let lo = two.sqrt_round(64, Round::Floor).0;
        let hi = two.sqrt_round(64, Round::Ceil).0;
        assert!(lo.mul_exact(&lo) < two);
        assert!(hi.mul_exact(&hi) > two);
        let four = BigFloat::from_int(4);
        assert_eq!(four.sqrt_round(10, Round::Floor).0, BigFloat::from_int(2));
    }

    #[test]
    fn add_with_huge_gap_stays_directed() {
        let one = BigFloat::one();
        let tiny = BigFloat::from_parts(BigInt::one(), -100_000);
        let (up, _) = one.add_round(&tiny, 53, Round::Ceil);
        let (down, _) = one.add_round(&tiny, 53, Round::Floor);
        assert!(up > one);
        assert_eq!(down, one);
        let (dn, _) = one.add_round(&tiny.neg(), 53, Round::Floor);
        assert!(dn < one);
    }

    #[test]
    fn ordering_matches_f64() {
        let vals = [-3.5, -1.0, -0.25, 0.0, 1e-30, 0.5, 2.0, 1e20];
        for a in vals {
            for b in vals {
                assert_eq!(bf(a).cmp(&bf(b)), a.partial_cmp(&b).unwrap());
            }
        }
    }
}
