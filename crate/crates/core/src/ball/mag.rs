//! Low-precision nonnegative magnitudes used for ball radii.
//!
//! A `Mag` stores `mant * 2^exp` with a mantissa of at most [`MAG_BITS`] bits.
//! Every operation rounds upward, except the explicitly named `*_lower`
//! helpers which produce lower bounds.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::bigfloat::{BigFloat, Round};

pub const MAG_BITS: u32 = 30;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mag {
    mant: u64,
    exp: i64,
}

impl Mag {
    pub const fn zero() -> Self {
        Mag { mant: 0, exp: 0 }
    }

    /// Exactly `2^e`.
    pub fn pow2(e: i64) -> Self {
        Mag { mant: 1, exp: e }
    }

    pub fn is_zero(&self) -> bool {
        self.mant == 0
    }

    fn from_u128_up(mut m: u128, mut e: i64) -> Self {
        if m == 0 {
            return Self::zero();
        }
        let bits = 128 - m.leading_zeros();
        if bits > MAG_BITS {
            let s = bits - MAG_BITS;
            let rem = m & ((1u128 << s) - 1);
            m >>= s;
            e += s as i64;
            if rem != 0 {
                m += 1;
            }
        }
        let mut out = Mag { mant: m as u64, exp: e };
        out.trim();
        out
    }

    fn from_u128_down(mut m: u128, mut e: i64) -> Self {
        if m == 0 {
            return Self::zero();
        }
        let bits = 128 - m.leading_zeros();
        if bits > MAG_BITS {
            let s = bits - MAG_BITS;
            m >>= s;
            e += s as i64;
        }
        let mut out = Mag { mant: m as u64, exp: e };
        out.trim();
        out
    }

    fn trim(&mut self) {
        if self.mant == 0 {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros();
        self.mant >>= tz;
        self.exp += tz as i64;
    }

    /// Upper bound of `|x|`.
    pub fn from_bigfloat_upper(x: &BigFloat) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        let r = x.abs().round(MAG_BITS as u64, Round::Ceil);
        let m = r.mantissa().to_u64().expect("rounded mantissa fits");
        Mag { mant: m, exp: r.exponent() }
    }

    /// Lower bound of `|x|`.
    pub fn from_bigfloat_lower(x: &BigFloat) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        let r = x.abs().round(MAG_BITS as u64, Round::Floor);
        let m = r.mantissa().to_u64().expect("rounded mantissa fits");
        Mag { mant: m, exp: r.exponent() }
    }

    /// Upper bound of a finite nonnegative `f64`.
    pub fn from_f64_upper(v: f64) -> Self {
        assert!(v.is_finite() && v >= 0.0, "Mag::from_f64_upper needs a finite nonnegative value");
        Self::from_bigfloat_upper(&BigFloat::from_f64(v).expect("finite"))
    }

    pub fn to_bigfloat(&self) -> BigFloat {
        BigFloat::from_parts(BigInt::from(self.mant), self.exp)
    }

    /// Upper bound as `f64` (saturates to infinity, never flushes to zero
    /// for nonzero values).
    pub fn to_f64_upper(&self) -> f64 {
        if self.mant == 0 {
            return 0.0;
        }
        let top = self.exp + 64 - self.mant.leading_zeros() as i64;
        if top > 1023 {
            return f64::INFINITY;
        }
        if top < -1020 {
            return f64::MIN_POSITIVE;
        }
        self.mant as f64 * 2f64.powi(self.exp as i32)
    }

    /// `floor(log2(self))`-ish leading bit position plus one; `i64::MIN` for zero.
    pub fn top(&self) -> i64 {
        if self.mant == 0 {
            i64::MIN
        } else {
            self.exp + 64 - self.mant.leading_zeros() as i64
        }
    }

    pub fn add_up(&self, other: &Self) -> Self {
        if self.mant == 0 {
            return *other;
        }
        if other.mant == 0 {
            return *self;
        }
        let (a, b) = if self.top() >= other.top() { (self, other) } else { (other, self) };
        if a.top() - b.top() > 60 {
            // b is below one unit of a's last kept bit: bump a by one unit
            let m = (a.mant as u128) << 2;
            return Self::from_u128_up(m + 1, a.exp - 2);
        }
        let e = a.exp.min(b.exp);
        let ma = (a.mant as u128) << (a.exp - e);
        let mb = (b.mant as u128) << (b.exp - e);
        Self::from_u128_up(ma + mb, e)
    }

    pub fn mul_up(&self, other: &Self) -> Self {
        if self.mant == 0 || other.mant == 0 {
            return Self::zero();
        }
        Self::from_u128_up(self.mant as u128 * other.mant as u128, self.exp + other.exp)
    }

    /// Upper bound of `self / den`; `den` must be nonzero.
    pub fn div_up(&self, den: &Self) -> Self {
        assert!(den.mant != 0, "Mag::div_up by zero");
        if self.mant == 0 {
            return Self::zero();
        }
        let num = (self.mant as u128) << 64;
        let q = num / den.mant as u128;
        let r = num % den.mant as u128;
        let q = if r != 0 { q + 1 } else { q };
        Self::from_u128_up(q, self.exp - den.exp - 64)
    }

    /// Lower bound of `self / den`.
    pub fn div_lower(&self, den: &Self) -> Self {
        assert!(den.mant != 0, "Mag::div_lower by zero");
        if self.mant == 0 {
            return Self::zero();
        }
        let num = (self.mant as u128) << 64;
        Self::from_u128_down(num / den.mant as u128, self.exp - den.exp - 64)
    }

    pub fn mul_lower(&self, other: &Self) -> Self {
        Self::from_u128_down(self.mant as u128 * other.mant as u128, self.exp + other.exp)
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.mant == 0 {
            *self
        } else {
            Mag { mant: self.mant, exp: self.exp + k }
        }
    }

    /// Upper bound of `self * n`.
    pub fn mul_u64_up(&self, n: u64) -> Self {
        Self::from_u128_up(self.mant as u128 * n as u128, self.exp)
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.mant == 0, other.mant == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        if self.top() != other.top() {
            return self.top().cmp(&other.top());
        }
        let e = self.exp.min(other.exp);
        let a = (self.mant as u128) << (self.exp - e);
        let b = (other.mant as u128) << (other.exp - e);
        a.cmp(&b)
    }
}

impl fmt::Debug for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mag({:e})", self.to_f64_upper())
    }
}
