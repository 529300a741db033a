//! Decimal text form of balls: `<sign><d>.<ddd>e<exp> +/- <radius>`.
//!
//! Serialization rounds the midpoint to decimal and folds the conversion
//! error into the printed radius, which is itself rounded up. Parsing rounds
//! the decimal midpoint to binary and widens again, so a round trip can only
//! grow the enclosure.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ball::Ball;
use super::bigfloat::{BigFloat, Round};
use super::mag::Mag;
use crate::error::{Error, Result};

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

fn scale10(q: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        q * BigRational::from_integer(pow10(e as u32))
    } else {
        q / BigRational::from_integer(pow10((-e) as u32))
    }
}

fn round_half_away(q: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if q.is_negative() {
        -((-q) + half).floor().to_integer()
    } else {
        (q + half).floor().to_integer()
    }
}

fn ceil_int(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

/// Rough `log10 |x|` from the leading bits.
fn approx_log10(x: &BigFloat) -> f64 {
    let r = x.abs().round(53, Round::Nearest);
    let m = r.mantissa().to_f64().unwrap_or(1.0);
    m.log10() + r.exponent() as f64 * std::f64::consts::LOG10_2
}

/// Positive rational `v`: returns `(n, e)` with `10^(digits-1) <= n < 10^digits`
/// and `n * 10^(e - digits + 1)` the rounding of `v`.
fn decimal_digits(v: &BigRational, approx_l10: f64, digits: u32) -> (BigInt, i64) {
    let mut e10 = approx_l10.floor() as i64;
    let lo = pow10(digits - 1);
    let hi = pow10(digits);
    for _ in 0..8 {
        let n = round_half_away(&scale10(v, digits as i64 - 1 - e10));
        if n >= hi {
            e10 += 1;
        } else if n < lo {
            e10 -= 1;
        } else {
            return (n, e10);
        }
    }
    let n = round_half_away(&scale10(v, digits as i64 - 1 - e10));
    (n, e10)
}

fn format_sci(negative: bool, n: &BigInt, e10: i64) -> String {
    let s = n.to_string();
    let (head, tail) = s.split_at(1);
    let tail = if tail.is_empty() { "0" } else { tail };
    format!("{}{}.{}e{}{}", if negative { "-" } else { "+" }, head, tail, if e10 < 0 { "-" } else { "+" }, e10.abs())
}

/// Upper bound of a nonnegative rational as a two-significant-digit decimal.
fn format_upper(r: &BigRational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let mut e10 = {
        let num = r.numer().to_f64().unwrap_or(f64::MAX);
        let den = r.denom().to_f64().unwrap_or(f64::MAX);
        if num.is_finite() && den.is_finite() && num > 0.0 && den > 0.0 {
            (num.log10() - den.log10()).floor() as i64
        } else {
            (r.numer().bits() as f64 - r.denom().bits() as f64).mul_add(std::f64::consts::LOG10_2, 0.0).floor() as i64
        }
    };
    for _ in 0..8 {
        let n = ceil_int(&scale10(r, 1 - e10));
        if n > BigInt::from(100) {
            e10 += 1;
        } else if n <= BigInt::from(9) {
            e10 -= 1;
        } else {
            if n == BigInt::from(100) {
                return format!("1.0e{}", e10 + 1);
            }
            let s = n.to_string();
            return format!("{}.{}e{}", &s[..1], &s[1..], e10);
        }
    }
    let n = ceil_int(&scale10(r, 1 - e10));
    let s = n.to_string();
    format!("{}.{}e{}", &s[..1], &s[1..], e10 - (s.len() as i64 - 2))
}

/// Parses `[+-]d[.ddd][e[+-]x]` exactly.
fn parse_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::Parse(s.to_string());
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (negative, body) = match body.as_bytes().first() {
        Some(b'-') => (true, &body[1..]),
        Some(b'+') => (false, &body[1..]),
        _ => (false, body),
    };
    let (int_part, frac_part) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().map_err(|_| err())?;
    let q = scale10(&BigRational::from_integer(n), exp - frac_part.len() as i64);
    Ok(if negative { -q } else { q })
}

/// Upper bound of a nonnegative rational as a `Mag`.
fn rational_upper_mag(q: &BigRational) -> Mag {
    if q.is_zero() {
        return Mag::zero();
    }
    let num = BigFloat::from_int(q.numer().abs());
    let den = BigFloat::from_int(q.denom().clone());
    let (v, _) = num.div_round(&den, 40, Round::Ceil);
    Mag::from_bigfloat_upper(&v)
}

impl Ball {
    /// Significant decimal digits printed for the midpoint.
    fn default_digits(&self) -> u32 {
        ((self.prec() as f64 * std::f64::consts::LOG10_2).floor() as u32 + 1).max(3)
    }

    /// Midpoint rounded to `digits` significant decimals, plus the
    /// conversion error.
    fn mid_decimal(&self, digits: u32) -> (String, BigRational) {
        let mid = self.mid();
        if mid.is_zero() {
            return ("+0.0e+0".to_string(), BigRational::zero());
        }
        let v = mid.to_rational();
        let (n, e10) = decimal_digits(&v.abs(), approx_log10(mid), digits.max(1));
        let printed = scale10(&BigRational::from_integer(n.clone()), e10 - digits as i64 + 1);
        let err = (printed - v.abs()).abs();
        (format_sci(mid.is_negative(), &n, e10), err)
    }

    pub fn to_decimal_string(&self, digits: u32) -> String {
        self.mid_decimal(digits).0
    }

    /// `mid +/- rad` decimal text that encloses this ball.
    pub fn serialize(&self) -> String {
        self.serialize_digits(self.default_digits())
    }

    pub fn serialize_digits(&self, digits: u32) -> String {
        let (m, err) = self.mid_decimal(digits);
        let r = self.rad().to_bigfloat().to_rational() + err;
        format!("{} +/- {}", m, format_upper(&r))
    }

    /// Parses text produced by [`Ball::serialize`] (or a bare decimal).
    pub fn parse(s: &str, prec: u32) -> Result<Ball> {
        let (m, r) = match s.find("+/-") {
            Some(i) => (&s[..i], Some(&s[i + 3..])),
            None => (s, None),
        };
        let mid = parse_decimal(m)?;
        let rad = match r {
            Some(r) => {
                let q = parse_decimal(r)?;
                if q.is_negative() {
                    return Err(Error::Parse(s.to_string()));
                }
                q
            }
            None => BigRational::zero(),
        };
        Ok(Ball::from_rational(&mid, prec).add_error(&rational_upper_mag(&rad)))
    }

    /// Parses with a precision large enough for every printed digit.
    pub fn parse_auto(s: &str) -> Result<Ball> {
        let digits = s.bytes().take_while(|b| *b != b'e' && *b != b'E').filter(u8::is_ascii_digit).count();
        Ball::parse(s, (digits as f64 * 3.33).ceil() as u32 + 32)
    }

    /// Certified rounding to `decimals` places after the point: `Some` only
    /// when both endpoints round to the same string.
    pub fn to_fixed(&self, decimals: u32) -> Option<String> {
        let lo = round_half_away(&scale10(&self.lower().to_rational(), decimals as i64));
        let hi = round_half_away(&scale10(&self.upper().to_rational(), decimals as i64));
        if lo != hi {
            return None;
        }
        Some(fixed_string(&lo, decimals))
    }

    /// Midpoint rounded to `decimals` places, without certification.
    pub fn to_fixed_uncertified(&self, decimals: u32) -> String {
        fixed_string(&round_half_away(&scale10(&self.mid().to_rational(), decimals as i64)), decimals)
    }
}

fn fixed_string(n: &BigInt, decimals: u32) -> String {
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let d = decimals as usize;
    let s = if s.len() <= d { format!("{}{}", "0".repeat(d + 1 - s.len()), s) } else { s };
    let (a, b) = s.split_at(s.len() - d);
    let body = if d == 0 { a.to_string() } else { format!("{a}.{b}") };
    if neg && !n.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

/// Correctly rounded decimal of an exact rational, for tests and tables.
pub fn rational_to_fixed(q: &BigRational, decimals: u32) -> String {
    fixed_string(&round_half_away(&scale10(q, decimals as i64)), decimals)
}
