//! Verified one-dimensional quadrature.
//!
//! Integrands are small expression trees evaluated over balls together with
//! their first derivative (forward-mode dual numbers). On a subinterval `S`
//! of width `w` and midpoint `m`, the mean value theorem gives
//! `int_S f = f(m) w + int_S (f'(xi_t) - c)(t - m) dt` for any constant `c`,
//! so with `c = mid(f'(S))` the error is at most `rad(f'(S)) w^2 / 4`.
//!
//! The Taylor scheme generalizes this: the integrand's Taylor coefficients at
//! the midpoint give the polynomial part exactly (odd moments vanish), and
//! the coefficient of even order `K` enclosed over the whole piece bounds the
//! remainder, because `(t - m)^K >= 0` there.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::ops;

use crate::ball::{Ball, BigFloat, Mag};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum Expr {
    Var,
    Const(Ball),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    PowInt(Box<Expr>, i64),
    /// `base^(p/q)`; the base of the exact integrand must be nonnegative.
    PowRational(Box<Expr>, i64, i64),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Sqrt(Box<Expr>),
}

impl Expr {
    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn constant(c: Ball) -> Expr {
        Expr::Const(c)
    }

    pub fn pow(self, n: i64) -> Expr {
        Expr::PowInt(Box::new(self), n)
    }

    pub fn pow_rational(self, p: i64, q: i64) -> Expr {
        assert!(q > 0);
        Expr::PowRational(Box::new(self), p, q)
    }

    pub fn sin(self) -> Expr {
        Expr::Sin(Box::new(self))
    }

    pub fn cos(self) -> Expr {
        Expr::Cos(Box::new(self))
    }

    pub fn sqrt(self) -> Expr {
        Expr::Sqrt(Box::new(self))
    }

    pub fn eval(&self, x: &Ball) -> Result<Ball> {
        Ok(match self {
            Expr::Var => x.clone(),
            Expr::Const(c) => c.clone(),
            Expr::Add(a, b) => a.eval(x)?.add(&b.eval(x)?),
            Expr::Sub(a, b) => a.eval(x)?.sub(&b.eval(x)?),
            Expr::Mul(a, b) => a.eval(x)?.mul(&b.eval(x)?),
            Expr::Neg(a) => a.eval(x)?.neg(),
            Expr::PowInt(a, n) => a.eval(x)?.pow_int(*n)?,
            Expr::PowRational(a, p, q) => pow_clamped(&a.eval(x)?, *p, *q)?,
            Expr::Sin(a) => a.eval(x)?.sin()?,
            Expr::Cos(a) => a.eval(x)?.cos()?,
            Expr::Sqrt(a) => a.eval(x)?.sqrt_nonneg(),
        })
    }

    /// Value and derivative with respect to the variable.
    pub fn eval_dual(&self, x: &Ball) -> Result<Dual> {
        let prec = x.prec();
        Ok(match self {
            Expr::Var => Dual { v: x.clone(), d: Ball::one(prec) },
            Expr::Const(c) => Dual { v: c.clone(), d: Ball::zero(prec) },
            Expr::Add(a, b) => {
                let (a, b) = (a.eval_dual(x)?, b.eval_dual(x)?);
                Dual { v: a.v.add(&b.v), d: a.d.add(&b.d) }
            }
            Expr::Sub(a, b) => {
                let (a, b) = (a.eval_dual(x)?, b.eval_dual(x)?);
                Dual { v: a.v.sub(&b.v), d: a.d.sub(&b.d) }
            }
            Expr::Mul(a, b) => {
                let (a, b) = (a.eval_dual(x)?, b.eval_dual(x)?);
                Dual { v: a.v.mul(&b.v), d: a.d.mul(&b.v).add(&a.v.mul(&b.d)) }
            }
            Expr::Neg(a) => {
                let a = a.eval_dual(x)?;
                Dual { v: a.v.neg(), d: a.d.neg() }
            }
            Expr::PowInt(a, n) => {
                let a = a.eval_dual(x)?;
                let n = *n;
                if n == 0 {
                    return Ok(Dual { v: Ball::one(prec), d: Ball::zero(prec) });
                }
                let lower = a.v.pow_int(n - 1)?;
                Dual { v: lower.mul(&a.v), d: lower.mul_int(n).mul(&a.d) }
            }
            Expr::PowRational(a, p, q) => {
                let a = a.eval_dual(x)?;
                let v = pow_clamped(&a.v, *p, *q)?;
                let d = pow_clamped(&a.v, p - q, *q)?.mul_int(*p).div_int(*q)?.mul(&a.d);
                Dual { v, d }
            }
            Expr::Sin(a) => {
                let a = a.eval_dual(x)?;
                let (s, c) = a.v.sin_cos()?;
                Dual { v: s, d: c.mul(&a.d) }
            }
            Expr::Cos(a) => {
                let a = a.eval_dual(x)?;
                let (s, c) = a.v.sin_cos()?;
                Dual { v: c, d: s.neg().mul(&a.d) }
            }
            Expr::Sqrt(a) => {
                let a = a.eval_dual(x)?;
                let v = a.v.sqrt()?;
                let d = a.d.div(&v.mul_2exp(1)).map_err(|_| Error::DomainViolation("sqrt derivative"))?;
                Dual { v, d }
            }
        })
    }
}

fn series_mul(a: &[Ball], b: &[Ball]) -> Vec<Ball> {
    let k = a.len();
    (0..k)
        .map(|j| {
            let mut acc = a[0].mul(&b[j]);
            for i in 1..=j {
                acc = acc.add(&a[i].mul(&b[j - i]));
            }
            acc
        })
        .collect()
}

fn series_pow_int(a: &[Ball], n: i64) -> Result<Vec<Ball>> {
    let k = a.len();
    let prec = a[0].prec();
    if n < 0 {
        return series_pow_rational(a, n, 1);
    }
    let mut out: Vec<Ball> = (0..k).map(|j| if j == 0 { Ball::one(prec) } else { Ball::zero(prec) }).collect();
    let mut base = a.to_vec();
    let mut e = n as u64;
    while e > 0 {
        if e & 1 == 1 {
            out = series_mul(&out, &base);
        }
        e >>= 1;
        if e > 0 {
            base = series_mul(&base, &base);
        }
    }
    Ok(out)
}

/// `g = f^(p/q)` from `f g' = (p/q) f' g`:
/// `j f_0 g_j = sum_{i=1..j} ((p/q) i - (j - i)) f_i g_{j-i}`.
fn series_pow_rational(a: &[Ball], p: i64, q: i64) -> Result<Vec<Ball>> {
    if !a[0].is_positive() {
        return Err(Error::NonPositiveBase);
    }
    let k = a.len();
    let mut g = vec![a[0].pow_rational(p, q)?];
    for j in 1..k {
        let mut acc = Ball::zero(a[0].prec());
        for i in 1..=j {
            // (p i - q (j - i)) / q
            let w = p * i as i64 - q * (j - i) as i64;
            if w != 0 {
                acc = acc.add(&a[i].mul(&g[j - i]).mul_int(w));
            }
        }
        g.push(acc.div(&a[0].mul_int(j as i64 * q))?);
    }
    Ok(g)
}

/// `(sin f, cos f)` from `s' = c f'`, `c' = -s f'`.
fn series_sin_cos(a: &[Ball]) -> Result<(Vec<Ball>, Vec<Ball>)> {
    let k = a.len();
    let (s0, c0) = a[0].sin_cos()?;
    let (mut s, mut c) = (vec![s0], vec![c0]);
    for j in 1..k {
        let mut sj = Ball::zero(a[0].prec());
        let mut cj = Ball::zero(a[0].prec());
        for i in 1..=j {
            let fi = a[i].mul_int(i as i64);
            sj = sj.add(&fi.mul(&c[j - i]));
            cj = cj.sub(&fi.mul(&s[j - i]));
        }
        s.push(sj.div_int(j as i64)?);
        c.push(cj.div_int(j as i64)?);
    }
    Ok((s, c))
}

impl Expr {
    /// Taylor coefficients `f^(j)(x) / j!` for `j < len`, enclosed over the ball `x`.
    pub fn eval_taylor(&self, x: &Ball, len: usize) -> Result<Vec<Ball>> {
        let prec = x.prec();
        let zeros = || -> Vec<Ball> { (0..len).map(|_| Ball::zero(prec)).collect() };
        Ok(match self {
            Expr::Var => {
                let mut v = zeros();
                v[0] = x.clone();
                if len > 1 {
                    v[1] = Ball::one(prec);
                }
                v
            }
            Expr::Const(c) => {
                let mut v = zeros();
                v[0] = c.clone();
                v
            }
            Expr::Add(a, b) => {
                let (a, b) = (a.eval_taylor(x, len)?, b.eval_taylor(x, len)?);
                a.iter().zip(&b).map(|(u, v)| u.add(v)).collect()
            }
            Expr::Sub(a, b) => {
                let (a, b) = (a.eval_taylor(x, len)?, b.eval_taylor(x, len)?);
                a.iter().zip(&b).map(|(u, v)| u.sub(v)).collect()
            }
            Expr::Mul(a, b) => series_mul(&a.eval_taylor(x, len)?, &b.eval_taylor(x, len)?),
            Expr::Neg(a) => a.eval_taylor(x, len)?.iter().map(Ball::neg).collect(),
            Expr::PowInt(a, n) => series_pow_int(&a.eval_taylor(x, len)?, *n)?,
            Expr::PowRational(a, p, q) => series_pow_rational(&a.eval_taylor(x, len)?, *p, *q)?,
            Expr::Sin(a) => series_sin_cos(&a.eval_taylor(x, len)?)?.0,
            Expr::Cos(a) => series_sin_cos(&a.eval_taylor(x, len)?)?.1,
            Expr::Sqrt(a) => series_pow_rational(&a.eval_taylor(x, len)?, 1, 2)?,
        })
    }
}

/// Rational power; a base that is not certainly positive is clamped at
/// zero, which is only sound for positive exponents.
fn pow_clamped(base: &Ball, p: i64, q: i64) -> Result<Ball> {
    if base.is_positive() || q == 1 {
        return base.pow_rational(p, q);
    }
    if p == 0 {
        return Ok(Ball::one(base.prec()));
    }
    if p < 0 {
        return Err(Error::NonPositiveBase);
    }
    base.pow_rational_nonneg(p, q)
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

#[derive(Clone, Debug)]
pub struct Dual {
    pub v: Ball,
    pub d: Ball,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// `f(S) * w` on each piece.
    IntervalSum,
    /// `f(m) w +/- rad(f'(S)) w^2 / 4` on each piece.
    MidpointDerivative,
    /// Taylor polynomial of the given even order with a remainder enclosed
    /// over the piece. Pieces where the expansion fails (e.g. a base
    /// touching zero) fall back to `MidpointDerivative`.
    Taylor(u32),
}

#[derive(Clone, Debug)]
pub struct QuadratureTask {
    pub integrand: Expr,
    pub a: Ball,
    pub b: Ball,
    pub scheme: Scheme,
    /// Initial number of equal pieces.
    pub subdivisions: usize,
}

impl QuadratureTask {
    pub fn new(integrand: Expr, a: Ball, b: Ball) -> Self {
        QuadratureTask { integrand, a, b, scheme: Scheme::MidpointDerivative, subdivisions: 8 }
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    fn prec(&self) -> u32 {
        self.a.prec().max(self.b.prec())
    }
}

fn piece(f: &Expr, lo: &BigFloat, hi: &BigFloat, scheme: Scheme, prec: u32) -> Result<Ball> {
    let w = Ball::exact(hi.sub_exact(lo), prec);
    let s = Ball::from_endpoints(lo, hi, prec);
    if scheme == Scheme::IntervalSum {
        return Ok(f.eval(&s)?.mul(&w));
    }
    if let Scheme::Taylor(order) = scheme {
        if let Ok(v) = taylor_piece(f, lo, hi, order, prec) {
            return Ok(v);
        }
    }
    let dual = match f.eval_dual(&s) {
        Ok(d) => d,
        Err(_) => return Ok(f.eval(&s)?.mul(&w)),
    };
    let coarse = dual.v.mul(&w);
    let m = Ball::exact(lo.add_exact(hi).mul_2exp(-1), prec);
    let fm = f.eval(&m)?;
    let w_mag = w.abs_upper();
    let err = dual.d.rad().mul_up(&w_mag).mul_up(&w_mag).mul_2exp(-2);
    let fine = fm.mul(&w).add_error(&err);
    Ok(if fine.rad() <= coarse.rad() { fine } else { coarse })
}

fn taylor_piece(f: &Expr, lo: &BigFloat, hi: &BigFloat, order: u32, prec: u32) -> Result<Ball> {
    let k = (order.max(2) + order % 2) as usize;
    let m = Ball::exact(lo.add_exact(hi).mul_2exp(-1), prec);
    let h = Ball::exact(hi.sub_exact(lo).mul_2exp(-1), prec);
    let at_mid = f.eval_taylor(&m, k)?;
    let over = f.eval_taylor(&Ball::from_endpoints(lo, hi, prec), k + 1)?;
    // int_{-h}^{h} s^j ds = 2 h^(j+1) / (j+1) for even j, 0 for odd j
    let h2 = h.sqr();
    let mut hp = h.mul_2exp(1);
    let mut total = Ball::zero(prec);
    for j in (0..k).step_by(2) {
        total = total.add(&at_mid[j].mul(&hp).div_int(j as i64 + 1)?);
        hp = hp.mul(&h2);
    }
    Ok(total.add(&over[k].mul(&hp).div_int(k as i64 + 1)?))
}

/// Contribution of the ball-valued endpoints: `|f| * rad` at each end.
fn endpoint_slack(task: &QuadratureTask) -> Result<Mag> {
    let mut slack = Mag::zero();
    for end in [&task.a, &task.b] {
        if !end.rad().is_zero() {
            slack = slack.add_up(&task.integrand.eval(end)?.abs_upper().mul_up(&end.rad()));
        }
    }
    Ok(slack)
}

fn uniform_points(lo: &BigFloat, hi: &BigFloat, n: usize) -> Vec<BigFloat> {
    let w = hi.sub_exact(lo);
    let n_bits = (usize::BITS - n.leading_zeros()) as u64;
    (0..=n)
        .map(|i| {
            if i == n {
                return hi.clone();
            }
            // lo + w * i / n, rounded: any partition point works
            let step = w.mul_exact(&BigFloat::from_int(i as u64));
            let (q, _) = step.div_round(&BigFloat::from_int(n as u64), w.bits() + n_bits + 64, crate::ball::Round::Nearest);
            lo.add_exact(&q)
        })
        .collect()
}

/// Fixed partition into `task.subdivisions` equal pieces.
pub fn integrate_uniform(task: &QuadratureTask) -> Result<Ball> {
    let prec = task.prec();
    let (lo, hi) = (task.a.mid().clone(), task.b.mid().clone());
    let pts = uniform_points(&lo, &hi, task.subdivisions.max(1));
    let mut total = Ball::zero(prec);
    for w in pts.windows(2) {
        total = total.add(&piece(&task.integrand, &w[0], &w[1], task.scheme, prec)?);
    }
    Ok(total.add_error(&endpoint_slack(task)?))
}

struct Piece {
    lo: BigFloat,
    hi: BigFloat,
    value: Ball,
}

/// Adaptive bisection of the widest piece until the enclosure is narrower
/// than `target_width`, or `budget` pieces are in use.
pub fn verified_integral(task: &QuadratureTask, target_width: f64, budget: usize) -> Result<Ball> {
    let prec = task.prec();
    let slack = endpoint_slack(task)?;
    let (lo, hi) = (task.a.mid().clone(), task.b.mid().clone());
    let pts = uniform_points(&lo, &hi, task.subdivisions.max(1));
    let mut pieces: Vec<Piece> = Vec::new();
    let mut heap: BinaryHeap<(Mag, Reverse<usize>)> = BinaryHeap::new();
    for w in pts.windows(2) {
        let value = piece(&task.integrand, &w[0], &w[1], task.scheme, prec)?;
        heap.push((value.rad(), Reverse(pieces.len())));
        pieces.push(Piece { lo: w[0].clone(), hi: w[1].clone(), value });
    }
    let mut alive = vec![true; pieces.len()];
    if !(target_width < f64::INFINITY) {
        return Ok(sum_in_order(&pieces, &alive, prec).add_error(&slack));
    }
    let target_rad = Mag::from_f64_upper(target_width.max(0.0) / 2.0);
    loop {
        // estimated radius of the running total (float sum, checked exactly below)
        let est: f64 = heap.iter().map(|(r, _)| r.to_f64_upper()).sum::<f64>() + slack.to_f64_upper();
        if est <= target_width / 2.0 {
            let total = sum_in_order(&pieces, &alive, prec).add_error(&slack);
            if total.rad() <= target_rad {
                return Ok(total);
            }
        }
        if heap.len() >= budget {
            return Err(Error::QuadratureBudgetExceeded { budget });
        }
        let (_, Reverse(idx)) = heap.pop().expect("nonempty");
        alive[idx] = false;
        let p = &pieces[idx];
        let mid = p.lo.add_exact(&p.hi).mul_2exp(-1);
        let (lo, hi) = (p.lo.clone(), p.hi.clone());
        for (a, b) in [(lo, mid.clone()), (mid, hi)] {
            let value = piece(&task.integrand, &a, &b, task.scheme, prec)?;
            heap.push((value.rad(), Reverse(pieces.len())));
            pieces.push(Piece { lo: a, hi: b, value });
            alive.push(true);
        }
    }
}

/// Sum over live pieces from left to right, so radii are reproducible.
fn sum_in_order(pieces: &[Piece], alive: &[bool], prec: u32) -> Ball {
    let mut live: Vec<&Piece> = pieces.iter().zip(alive).filter(|(_, a)| **a).map(|(p, _)| p).collect();
    live.sort_by(|x, y| x.lo.cmp(&y.lo));
    live.iter().fold(Ball::zero(prec), |acc, p| acc.add(&p.value))
}
