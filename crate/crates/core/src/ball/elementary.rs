//! Constants and elementary functions on balls.
//!
//! Every function evaluates a truncated series in ball arithmetic on the
//! whole input ball (so input radii propagate automatically) and adds an
//! explicit bound for the discarded tail. Arguments are first reduced
//! (halving for exp/sin/cos/arctan, binary exponent splitting for log) so the
//! series converge quickly.

use std::cell::RefCell;

use num_integer::Integer;

use super::ball::Ball;
use super::bigfloat::{BigFloat, Round};
use super::mag::Mag;
use crate::error::{Error, Result};

const GUARD: u32 = 24;

thread_local! {
    static PI_CACHE: RefCell<Option<Ball>> = const { RefCell::new(None) };
    static LN2_CACHE: RefCell<Option<Ball>> = const { RefCell::new(None) };
}

fn cached(cache: &'static std::thread::LocalKey<RefCell<Option<Ball>>>, prec: u32, compute: fn(u32) -> Ball) -> Ball {
    let hit = cache.with(|c| c.borrow().as_ref().filter(|b| b.prec() >= prec).cloned());
    if let Some(b) = hit {
        return b.with_prec(prec);
    }
    let b = compute(prec);
    cache.with(|c| *c.borrow_mut() = Some(b.clone()));
    b
}

/// `sum_{j<N} (-1)^j / ((2j+1) k^(2j+1))` plus tail, i.e. `arctan(1/k)`.
pub(crate) fn arctan_recip(k: u32, prec: u32) -> Ball {
    let wp = prec + GUARD;
    let eps = Mag::pow2(-(wp as i64) - 4);
    let k2 = (k as u64) * (k as u64);
    let mut power = Ball::one(wp).div_int(k).expect("k > 0");
    let mut sum = Ball::zero(wp);
    let mut j: u64 = 0;
    loop {
        let term = power.div_int(2 * j + 1).expect("odd > 0");
        if term.abs_upper() < eps {
            // alternating decreasing series: tail bounded by first omitted term
            sum = sum.add_error(&term.abs_upper());
            break;
        }
        sum = if j.is_multiple_of(2) { sum.add(&term) } else { sum.sub(&term) };
        power = power.div_int(k2).expect("k > 0");
        j += 1;
    }
    sum.with_prec(prec)
}

fn compute_pi(prec: u32) -> Ball {
    let wp = prec + 8;
    let a = arctan_recip(5, wp).mul_int(16);
    let b = arctan_recip(239, wp).mul_int(4);
    a.sub(&b).with_prec(prec)
}

/// `atanh` series for `|t| <= 1/2`: `sum t^(2j+1)/(2j+1)`.
fn atanh_series(t: &Ball, wp: u32) -> Ball {
    let eps = Mag::pow2(-(wp as i64) - 4);
    let t2 = t.sqr();
    let mut power = t.clone();
    let mut sum = Ball::zero(wp);
    let mut j: u64 = 0;
    loop {
        let term = power.div_int(2 * j + 1).expect("odd > 0");
        if term.abs_upper() < eps {
            // geometric tail with ratio t^2 <= 1/4, so at most 4/3 * |term|
            sum = sum.add_error(&term.abs_upper().mul_u64_up(2));
            break;
        }
        sum = sum.add(&term);
        power = power.mul(&t2);
        j += 1;
    }
    sum
}

fn compute_ln2(prec: u32) -> Ball {
    let wp = prec + GUARD;
    let third = Ball::one(wp).div_int(3).expect("3 > 0");
    atanh_series(&third, wp).mul_2exp(1).with_prec(prec)
}

impl Ball {
    /// The constant pi at `prec` bits (Machin's formula).
    pub fn pi(prec: u32) -> Ball {
        cached(&PI_CACHE, prec, compute_pi)
    }

    /// The constant log(2).
    pub fn ln2(prec: u32) -> Ball {
        cached(&LN2_CACHE, prec, compute_ln2)
    }

    /// Square root; the ball must be certainly nonnegative.
    pub fn sqrt(&self) -> Result<Ball> {
        if self.lower().is_negative() {
            return Err(Error::DomainViolation("sqrt"));
        }
        Ok(self.sqrt_nonneg())
    }

    /// Square root of the nonnegative part of the ball. Callers use this when
    /// the exact value is known to be nonnegative even though rounding may
    /// have pushed the lower endpoint below zero.
    pub fn sqrt_nonneg(&self) -> Ball {
        let prec = self.prec();
        let lower = self.lower();
        if !lower.is_positive() {
            let hi = self.upper();
            if !hi.is_positive() {
                return Ball::zero(prec);
            }
            let (s, _) = hi.sqrt_round(prec as u64, Round::Ceil);
            return Ball::from_endpoints(&BigFloat::zero(), &s, prec);
        }
        let (mid, err) = self.mid().sqrt_round(prec as u64, Round::Nearest);
        if self.rad().is_zero() {
            return Ball::new(mid, err, prec);
        }
        let (sl, _) = lower.sqrt_round(32, Round::Floor);
        let den = Mag::from_bigfloat_lower(&sl).mul_2exp(1);
        let rad = self.rad().div_up(&den).add_up(&err);
        Ball::new(mid, rad, prec)
    }

    pub fn exp(&self) -> Result<Ball> {
        let prec = self.prec();
        let top = self.abs_upper().top();
        let s = if top == i64::MIN { 0 } else { (top + 10).max(0) };
        if s > 4096 {
            return Err(Error::DomainViolation("exp"));
        }
        let wp = prec + GUARD + s as u32;
        let t = self.with_prec(wp).mul_2exp(-s);
        let eps = Mag::pow2(-(wp as i64) - 4);
        let mut sum = Ball::one(wp);
        let mut term = Ball::one(wp);
        let mut j: u64 = 1;
        loop {
            term = term.mul(&t).div_int(j).expect("j > 0");
            if term.abs_upper() < eps {
                // |t| <= 2^-10: the remaining terms sum to at most 2|term|
                sum = sum.add_error(&term.abs_upper().mul_u64_up(2));
                break;
            }
            sum = sum.add(&term);
            j += 1;
        }
        for _ in 0..s {
            sum = sum.sqr();
        }
        Ok(sum.with_prec(prec))
    }

    /// Natural logarithm; the ball must be certainly positive.
    pub fn log(&self) -> Result<Ball> {
        let prec = self.prec();
        let lower = self.lower();
        if !lower.is_positive() {
            return Err(Error::DomainViolation("log"));
        }
        // wide balls: log is monotone, evaluate the endpoints
        if !self.rad().is_zero() && self.rad().top() > self.mid().top() - 16 {
            let lo = Ball::exact(lower, prec).log()?;
            let hi = Ball::exact(self.upper(), prec).log()?;
            return Ok(Ball::from_endpoints(&lo.lower(), &hi.upper(), prec));
        }
        let wp = prec + GUARD;
        // x = 2^e * y with y near 1
        let m = self.mid();
        let approx = m.round(53, Round::Nearest);
        let l2 = approx.mantissa().bits() as i64 + approx.exponent();
        let lead = approx.mul_2exp(-l2).to_f64(); // in [0.5, 1)
        let e = if lead < std::f64::consts::FRAC_1_SQRT_2 { l2 - 1 } else { l2 };
        let y = self.with_prec(wp).mul_2exp(-e);
        let one = Ball::one(wp);
        let t = y.sub(&one).div(&y.add(&one))?;
        let mut res = atanh_series(&t, wp).mul_2exp(1);
        if e != 0 {
            res = res.add(&Ball::ln2(wp).mul_int(e));
        }
        Ok(res.with_prec(prec))
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(&self) -> Result<(Ball, Ball)> {
        let prec = self.prec();
        let top = self.abs_upper().top();
        if top > 64 {
            return Err(Error::DomainViolation("sin/cos"));
        }
        let s = if top == i64::MIN { 0 } else { (top + 8).max(0) } as u32;
        let wp = prec + GUARD + 2 * s;
        let t = self.with_prec(wp).mul_2exp(-(s as i64));
        let t2 = t.sqr();
        let eps = Mag::pow2(-(wp as i64) - 4);
        // sin series
        let mut sin = Ball::zero(wp);
        let mut term = t.clone();
        let mut j: u64 = 1;
        loop {
            if term.abs_upper() < eps {
                sin = sin.add_error(&term.abs_upper());
                break;
            }
            sin = sin.add(&term);
            term = term.mul(&t2).div_int((j + 1) * (j + 2)).expect("positive").neg();
            j += 2;
        }
        let mut cos = Ball::zero(wp);
        let mut term = Ball::one(wp);
        let mut j: u64 = 0;
        loop {
            if term.abs_upper() < eps {
                cos = cos.add_error(&term.abs_upper());
                break;
            }
            cos = cos.add(&term);
            term = term.mul(&t2).div_int((j + 1) * (j + 2)).expect("positive").neg();
            j += 2;
        }
        let one = Ball::one(wp);
        for _ in 0..s {
            let new_sin = sin.mul(&cos).mul_2exp(1);
            cos = one.sub(&sin.sqr().mul_2exp(1));
            sin = new_sin;
        }
        Ok((sin.with_prec(prec), cos.with_prec(prec)))
    }

    pub fn sin(&self) -> Result<Ball> {
        Ok(self.sin_cos()?.0)
    }

    pub fn cos(&self) -> Result<Ball> {
        Ok(self.sin_cos()?.1)
    }

    pub fn tan(&self) -> Result<Ball> {
        let (s, c) = self.sin_cos()?;
        s.div(&c).map_err(|_| Error::DomainViolation("tan"))
    }

    pub fn sec(&self) -> Result<Ball> {
        let (_, c) = self.sin_cos()?;
        c.inv().map_err(|_| Error::DomainViolation("sec"))
    }

    pub fn arctan(&self) -> Result<Ball> {
        let prec = self.prec();
        let mut halvings: u32 = 0;
        let wp0 = prec + GUARD + 64;
        let mut t = self.with_prec(wp0);
        let one = Ball::one(wp0);
        let limit = Mag::pow2(-8);
        while t.abs_upper() > limit {
            if halvings > 80 {
                return Err(Error::DomainViolation("arctan"));
            }
            // arctan x = 2 arctan(x / (1 + sqrt(1 + x^2)))
            let root = one.add(&t.sqr()).sqrt_nonneg();
            t = t.div(&one.add(&root))?;
            halvings += 1;
        }
        let wp = wp0;
        let eps = Mag::pow2(-(wp as i64) - 4);
        let t2 = t.sqr();
        let mut power = t.clone();
        let mut sum = Ball::zero(wp);
        let mut j: u64 = 0;
        loop {
            let term = power.div_int(2 * j + 1).expect("odd > 0");
            if term.abs_upper() < eps {
                sum = sum.add_error(&term.abs_upper());
                break;
            }
            sum = if j.is_multiple_of(2) { sum.add(&term) } else { sum.sub(&term) };
            power = power.mul(&t2);
            j += 1;
        }
        Ok(sum.mul_2exp(halvings as i64).with_prec(prec))
    }

    /// Inverse sine; the ball must lie inside `[-1, 1]`.
    pub fn arcsin(&self) -> Result<Ball> {
        let one = BigFloat::one();
        if self.upper() > one || self.lower() < one.neg() {
            return Err(Error::DomainViolation("arcsin"));
        }
        let prec = self.prec();
        let wp = prec + GUARD;
        let x = self.with_prec(wp);
        let onep = Ball::one(wp);
        let c = onep.sub(&x.sqr()).sqrt_nonneg();
        let r = x.div(&onep.add(&c))?.arctan()?.mul_2exp(1);
        Ok(r.with_prec(prec))
    }

    /// `self^(p/q)` for a certainly positive base (any base when `q == 1`).
    pub fn pow_rational(&self, p: i64, q: i64) -> Result<Ball> {
        assert!(q > 0, "pow_rational needs a positive denominator");
        let g = p.gcd(&q);
        let (p, q) = if g > 1 { (p / g, q / g) } else { (p, q) };
        if p == 0 {
            return Ok(Ball::one(self.prec()));
        }
        if q == 1 {
            return self.pow_int(p);
        }
        if !self.is_positive() {
            return Err(Error::NonPositiveBase);
        }
        if q == 2 {
            return self.sqrt()?.pow_int(p);
        }
        let prec = self.prec();
        let wp = prec + GUARD;
        let l = self.with_prec(wp).log()?;
        let e = l.mul_int(p).div_int(q)?.exp()?;
        Ok(e.with_prec(prec))
    }

    /// `self^(p/q)` where the exact value of the base is known to be
    /// nonnegative and `p/q > 0`; rounding below zero is clamped.
    pub fn pow_rational_nonneg(&self, p: i64, q: i64) -> Result<Ball> {
        assert!(p > 0 && q > 0);
        if self.is_positive() {
            return self.pow_rational(p, q);
        }
        let hi = self.upper();
        if !hi.is_positive() {
            return Ok(Ball::zero(self.prec()));
        }
        let top = Ball::exact(hi, self.prec()).pow_rational(p, q)?.upper();
        Ok(Ball::from_endpoints(&BigFloat::zero(), &top, self.prec()))
    }
}
