//! The first Appell function
//! `F1(a, b1, b2; c; x, y) = sum_{m,n} (a)_{m+n} (b1)_m (b2)_n / ((c)_{m+n} m! n!) x^m y^n`.

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::hyp2f1::gauss_2f1;
use super::{nonpositive_integer, Rational};
use crate::ball::{Ball, BigFloat, Mag};
use crate::error::{Error, Result};
use crate::oracle::quadrature::{verified_integral, Expr, QuadratureTask, Scheme};

const GUARD: u32 = 32;

fn int(j: usize) -> Rational {
    Rational::from_integer(j.into())
}

fn check_unit_disc(x: &Ball, y: &Ball) -> Result<()> {
    if x.abs_upper() >= Mag::pow2(0) || y.abs_upper() >= Mag::pow2(0) {
        return Err(Error::DomainViolation("appell_f1 needs |x|, |y| < 1"));
    }
    Ok(())
}

/// `F1` for the parameter sets this crate needs: terminating in both
/// directions, the `c = a + 1` family, or any `c >= a > 0`.
pub fn appell_f1(a: &Rational, b1: &Rational, b2: &Rational, c: &Rational, x: &Ball, y: &Ball) -> Result<Ball> {
    let prec = x.prec().max(y.prec());
    if b1.is_zero() && b2.is_zero() {
        return Ok(Ball::one(prec));
    }
    if nonpositive_integer(c).is_some() {
        return Err(Error::InvalidC);
    }
    if y.is_exact() && y.mid().is_zero() {
        return gauss_2f1(a, b1, c, &x.with_prec(prec));
    }
    if x.is_exact() && x.mid().is_zero() {
        return gauss_2f1(a, b2, c, &y.with_prec(prec));
    }
    if let (Some(m1), Some(m2)) = (nonpositive_integer(b1), nonpositive_integer(b2)) {
        return Ok(double_sum(a, b1, b2, c, x, y, m1 as usize, m2 as usize));
    }
    check_unit_disc(x, y)?;
    if *c == a + Rational::one() && a.is_positive() {
        return appell_f1_diagonal(a, b1, b2, x, y);
    }
    appell_f1_iterated(a, b1, b2, c, x, y)
}

/// Finite double sum when both `b1 = -m1` and `b2 = -m2`.
fn double_sum(a: &Rational, b1: &Rational, b2: &Rational, c: &Rational, x: &Ball, y: &Ball, m1: usize, m2: usize) -> Ball {
    let prec = x.prec().max(y.prec());
    // (a)_N / (c)_N
    let mut ac = vec![Rational::one()];
    for n in 0..m1 + m2 {
        let next = &ac[n] * (a + int(n)) / (c + int(n));
        ac.push(next);
    }
    let binom = |b: &Rational, m: usize| {
        let mut v = vec![Rational::one()];
        for j in 0..m {
            let next = &v[j] * (b + int(j)) / int(j + 1);
            v.push(next);
        }
        v
    };
    let (u, v) = (binom(b1, m1), binom(b2, m2));
    if x.is_exact() && y.is_exact() {
        let (xq, yq) = (x.mid().to_rational(), y.mid().to_rational());
        let mut total = Rational::zero();
        let mut xp = Rational::one();
        for (i, ui) in u.iter().enumerate() {
            let mut inner = Rational::zero();
            let mut yp = Rational::one();
            for (j, vj) in v.iter().enumerate() {
                inner += &ac[i + j] * vj * &yp;
                yp *= &yq;
            }
            total += ui * &xp * inner;
            xp *= &xq;
        }
        return Ball::from_rational(&total, prec);
    }
    let wp = prec + GUARD;
    let (xw, yw) = (x.with_prec(wp), y.with_prec(wp));
    let mut total = Ball::zero(wp);
    for (i, ui) in u.iter().enumerate().rev() {
        let mut inner = Ball::zero(wp);
        for (j, vj) in v.iter().enumerate().rev() {
            inner = inner.mul(&yw).add(&Ball::from_rational(&(&ac[i + j] * vj), wp));
        }
        total = total.mul(&xw).add(&inner.mul_rational(ui));
    }
    total.with_prec(prec)
}

/// Upper bound of `(1 - |x|)^(-|b|)`, the majorant series at t = 1.
fn majorant_total(x: &Ball, b: &Rational) -> Result<Ball> {
    let prec = 64;
    if b.is_zero() {
        return Ok(Ball::one(prec));
    }
    let base = Ball::one(prec).sub(&Ball::exact(x.abs_upper().to_bigfloat(), prec));
    let base = Ball::exact(base.lower(), prec);
    let (p, q) = small_ratio(&-b.abs())?;
    let v = base.pow_rational(p, q)?;
    Ok(Ball::exact(v.upper(), prec))
}

fn small_ratio(r: &Rational) -> Result<(i64, i64)> {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(Error::DomainViolation("parameter too large")),
    }
}

/// Term and certified tail of `sum_i (|b|)_i/i! |x|^i`, maintained incrementally.
struct Majorant {
    b: Rational,
    x: Ball,
    i: usize,
    term: Ball,
}

impl Majorant {
    fn new(b: &Rational, x: &Ball) -> Self {
        let prec = 64;
        Majorant { b: b.abs(), x: Ball::exact(x.abs_upper().to_bigfloat(), prec), i: 0, term: Ball::one(prec) }
    }

    fn advance_to(&mut self, k: usize) {
        while self.i < k {
            let f = (&self.b + int(self.i)) / int(self.i + 1);
            self.term = self.term.mul_rational(&f).mul(&self.x);
            self.i += 1;
        }
    }

    /// Bound on `sum_{i >= self.i}` terms, if the ratio bound is below one.
    fn tail(&self) -> Option<Ball> {
        let prec = 64;
        if self.b.is_zero() {
            return Some(if self.i == 0 { Ball::one(prec) } else { Ball::zero(prec) });
        }
        let f = ((&self.b + int(self.i)) / int(self.i + 1)).max(Rational::one());
        let q = self.x.mul_rational(&f);
        if q.upper() >= BigFloat::one() {
            return None;
        }
        let t = self.term.div(&Ball::one(prec).sub(&q)).ok()?;
        Some(Ball::exact(t.upper(), prec))
    }
}

/// `F1(a, b1, b2; a + 1; x, y) = a int_0^1 t^(a-1) g(t) dt` with
/// `g(t) = (1 - x t)^(-b1) (1 - y t)^(-b2) = sum e_N t^N`, hence
/// `F1 = sum_N a/(a+N) e_N`. Multiplying `g'/g` out gives the three-term
/// recurrence
/// `N e_N = (s (N-1) + b1 x + b2 y) e_{N-1} - p (N - 2 + b1 + b2) e_{N-2}`
/// with `s = x + y`, `p = x y`.
pub fn appell_f1_diagonal(a: &Rational, b1: &Rational, b2: &Rational, x: &Ball, y: &Ball) -> Result<Ball> {
    check_unit_disc(x, y)?;
    if !a.is_positive() {
        return Err(Error::DomainViolation("appell_f1_diagonal needs a > 0"));
    }
    let prec = x.prec().max(y.prec());
    let wp = prec + GUARD;
    let (xw, yw) = (x.with_prec(wp), y.with_prec(wp));
    let s = xw.add(&yw);
    let p = xw.mul(&yw);
    let beta = xw.mul_rational(b1).add(&yw.mul_rational(b2));
    let gamma = b1 + b2;
    let tot1 = majorant_total(x, b1)?;
    let tot2 = majorant_total(y, b2)?;
    let mut maj1 = Majorant::new(b1, x);
    let mut maj2 = Majorant::new(b2, y);
    let eps = Mag::pow2(-(wp as i64) - 2);

    let mut e_prev2 = Ball::zero(wp);
    let mut e_prev = Ball::one(wp);
    let mut sum = Ball::one(wp); // N = 0 term: a/a * 1
    let mut n: usize = 1;
    loop {
        let nn = int(n);
        let c1 = s.mul_int(n as i64 - 1).add(&beta);
        let c2 = p.mul_rational(&(nn.clone() - Rational::from_integer(2.into()) + &gamma));
        let e = c1.mul(&e_prev).sub(&c2.mul(&e_prev2)).div_int(n as i64)?;
        let w = a / (a + &nn);
        sum = sum.add(&e.mul_rational(&w));
        e_prev2 = e_prev;
        e_prev = e;
        n += 1;
        if n.is_multiple_of(16) {
            // remaining N >= n: split i + j >= n into i >= K or j >= K
            let k = n.div_ceil(2);
            maj1.advance_to(k);
            maj2.advance_to(k);
            if let (Some(t1), Some(t2)) = (maj1.tail(), maj2.tail()) {
                let bound = t1.mul(&tot2).add(&tot1.mul(&t2)).mul_rational(&(a / (a + int(n))));
                let bound = Mag::from_bigfloat_upper(&bound.upper());
                if bound < eps.mul_2exp(sum.abs_upper().top().max(0)) {
                    return Ok(sum.add_error(&bound).with_prec(prec));
                }
            }
        }
        if n > 20_000_000 {
            return Err(Error::DivergentParameters);
        }
    }
}

/// `F1 = sum_n (a)_n (b2)_n / ((c)_n n!) y^n 2F1(a + n, b1; c + n; x)`, for
/// `c >= a > 0`. Then every inner value is bounded by `(1 - |x|)^(-|b1|)`
/// and the outer coefficients by `(|b2|)_n / n!`.
pub fn appell_f1_iterated(a: &Rational, b1: &Rational, b2: &Rational, c: &Rational, x: &Ball, y: &Ball) -> Result<Ball> {
    check_unit_disc(x, y)?;
    if !(a.is_positive() && c >= a) {
        return Err(Error::DomainViolation("appell_f1_iterated needs c >= a > 0"));
    }
    let prec = x.prec().max(y.prec());
    let wp = prec + GUARD;
    let (xw, yw) = (x.with_prec(wp), y.with_prec(wp));
    let inner_bound = majorant_total(x, b1)?;
    let mut outer = Majorant::new(b2, y);
    let terminating = nonpositive_integer(b2);
    let eps = Mag::pow2(-(wp as i64) - 2);
    let mut coef = Rational::one();
    let mut ypow = Ball::one(wp);
    let mut sum = Ball::zero(wp);
    let mut n: usize = 0;
    loop {
        let nn = int(n);
        if let Some(m) = terminating {
            if n as u64 > m {
                return Ok(sum.with_prec(prec));
            }
        } else if n > 0 && n.is_multiple_of(4) {
            outer.advance_to(n);
            if let Some(t) = outer.tail() {
                let bound = Mag::from_bigfloat_upper(&t.mul(&inner_bound).upper());
                if bound < eps.mul_2exp(sum.abs_upper().top().max(0)) {
                    return Ok(sum.add_error(&bound).with_prec(prec));
                }
            }
        }
        let inner = gauss_2f1(&(a + &nn), b1, &(c + &nn), &xw)?;
        sum = sum.add(&inner.mul(&ypow).mul_rational(&coef));
        coef = coef * (a + &nn) * (b2 + &nn) / ((c + &nn) * (&nn + Rational::one()));
        ypow = ypow.mul(&yw);
        n += 1;
        if n > 1_000_000 {
            return Err(Error::DivergentParameters);
        }
    }
}

/// Options for the quadrature path.
#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub target_width: f64,
    pub budget: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { target_width: 1e-10, budget: 200_000 }
    }
}

/// Picard integral
/// `F1 = Gamma(c) / (Gamma(a) Gamma(c - a)) int_0^1 t^(a-1) (1-t)^(c-a-1) (1 - x t)^(-b1) (1 - y t)^(-b2) dt`,
/// evaluated by verified quadrature. Needs integer `a >= 1` and `c - a >= 1`,
/// so the integrand is smooth on `[0, 1]`.
pub fn appell_f1_quadrature(
    a: &Rational,
    b1: &Rational,
    b2: &Rational,
    c: &Rational,
    x: &Ball,
    y: &Ball,
    opts: QuadOptions,
) -> Result<Ball> {
    check_unit_disc(x, y)?;
    let ai = a.is_integer().then(|| a.to_integer().to_i64()).flatten().filter(|v| *v >= 1);
    let gap = c - a;
    let gi = gap.is_integer().then(|| gap.to_integer().to_i64()).flatten().filter(|v| *v >= 1);
    let (Some(ai), Some(gi)) = (ai, gi) else {
        return Err(Error::DomainViolation("appell_f1_quadrature needs integer a >= 1 and c - a >= 1"));
    };
    let prec = x.prec().max(y.prec());
    let wp = prec + 16;
    let t = Expr::var;
    let one = || Expr::constant(Ball::one(wp));
    let factor = |z: &Ball, b: &Rational| -> Result<Expr> {
        let (p, q) = small_ratio(&-b)?;
        Ok((one() - Expr::constant(z.with_prec(wp)) * t()).pow_rational(p, q))
    };
    let integrand = t().pow(ai - 1) * (one() - t()).pow(gi - 1) * factor(x, b1)? * factor(y, b2)?;
    // Gamma(c) / (Gamma(a) Gamma(c - a)) = (c-1)! / ((a-1)! (c-a-1)!)
    let fact = |m: i64| (1..=m).fold(num_bigint::BigInt::one(), |acc, v| acc * v);
    let scale = Rational::new(fact(ai + gi - 1), fact(ai - 1) * fact(gi - 1));
    let task = QuadratureTask::new(integrand, Ball::zero(wp), Ball::one(wp)).with_scheme(Scheme::Taylor(16));
    let target = opts.target_width / scale.to_f64().unwrap_or(1.0).max(1.0);
    let v = verified_integral(&task, target, opts.budget)?;
    Ok(v.mul_rational(&scale).with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::rat;

    fn b(q: Rational, prec: u32) -> Ball {
        Ball::from_rational(&q, prec)
    }

    #[test]
    fn trivial_parameters() {
        let (x, y) = (b(rat(1, 3), 64), b(rat(-1, 5), 64));
        assert_eq!(appell_f1(&rat(4, 1), &rat(0, 1), &rat(0, 1), &rat(5, 1), &x, &y).unwrap(), Ball::one(64));
    }

    #[test]
    fn y_zero_reduces_to_gauss() {
        let prec = 128;
        let (x, y) = (b(rat(7, 10), prec), Ball::zero(prec));
        let f = appell_f1(&rat(3, 1), &rat(-5, 2), &rat(-5, 2), &rat(4, 1), &x, &y).unwrap();
        let g = gauss_2f1(&rat(3, 1), &rat(-5, 2), &rat(4, 1), &x).unwrap();
        assert!(f.intersects(&g));
        // the diagonal path on a tiny nonzero y is close to the same value
        let tiny = b(rat(1, 1_000_000_000_000), prec);
        let d = appell_f1(&rat(3, 1), &rat(-5, 2), &rat(-5, 2), &rat(4, 1), &x, &tiny).unwrap();
        assert!((d.to_f64() - g.to_f64()).abs() < 1e-10);
    }

    #[test]
    fn terminating_double_sum_exact() {
        let prec = 128;
        let (x, y) = (b(rat(1, 3), prec), b(rat(-1, 5), prec));
        let f = appell_f1(&rat(4, 1), &rat(-2, 1), &rat(-2, 1), &rat(5, 1), &x, &y).unwrap();
        let mut exact = Rational::zero();
        for m in 0..=2usize {
            for n in 0..=2usize {
                let poch = |s: Rational, k: usize| (0..k).fold(Rational::one(), |acc, i| acc * (&s + int(i)));
                let fact = |k: usize| poch(rat(1, 1), k);
                let coef = poch(rat(4, 1), m + n) * poch(rat(-2, 1), m) * poch(rat(-2, 1), n)
                    / (poch(rat(5, 1), m + n) * fact(m) * fact(n));
                exact += coef * num_traits::pow(rat(1, 3), m) * num_traits::pow(rat(-1, 5), n);
            }
        }
        assert!(f.contains_rational(&exact));
        // the same value through the recurrence and the quadrature
        let d = appell_f1_diagonal(&rat(4, 1), &rat(-2, 1), &rat(-2, 1), &x, &y).unwrap();
        assert!(d.contains_rational(&exact));
        let q = appell_f1_quadrature(&rat(4, 1), &rat(-2, 1), &rat(-2, 1), &rat(5, 1), &x, &y, QuadOptions::default())
            .unwrap();
        assert!(q.contains_rational(&exact));
    }

    #[test]
    fn three_routes_agree_on_competitor_arguments() {
        let prec = 128;
        let x = Ball::parse("0.88366349398931 +/- 1e-14", prec).unwrap();
        let y = Ball::parse("-0.15161268642076 +/- 1e-14", prec).unwrap();
        let (a, c) = (rat(4, 1), rat(5, 1));
        let bh = rat(-3, 2);
        let d = appell_f1(&a, &bh, &bh, &c, &x, &y).unwrap();
        let it = appell_f1_iterated(&a, &bh, &bh, &c, &x, &y).unwrap();
        let q = appell_f1_quadrature(&a, &bh, &bh, &c, &x, &y, QuadOptions { target_width: 1e-9, budget: 100_000 }).unwrap();
        assert!(d.intersects(&it), "{d:?} {it:?}");
        assert!(d.intersects(&q), "{d:?} {q:?}");
    }

    #[test]
    fn outside_unit_disc() {
        let (x, y) = (b(rat(11, 10), 64), b(rat(0, 1), 64).add(&b(rat(1, 10), 64)));
        assert!(appell_f1(&rat(2, 1), &rat(1, 2), &rat(1, 2), &rat(3, 1), &x, &y).is_err());
    }
}
