//! Gauss hypergeometric series with a certified truncation bound.

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{nonpositive_integer, Rational};
use crate::ball::{Ball, BigFloat, Mag};
use crate::error::{Error, Result};

/// Truncation data of a series summed up to (excluding) index `n`.
#[derive(Clone, Debug)]
pub struct SeriesTail {
    pub n: usize,
    /// Certified bound `q < 1` on `|t_{j+1} / t_j|` for all `j >= n`.
    pub ratio: Ball,
    /// Upper bound on `sum_{j >= n} |t_j|`, i.e. `|t_n| / (1 - q)`.
    pub bound: Ball,
}

impl SeriesTail {
    fn empty(prec: u32) -> Self {
        SeriesTail { n: 0, ratio: Ball::zero(prec), bound: Ball::zero(prec) }
    }
}

fn int(j: usize) -> Rational {
    Rational::from_integer(j.into())
}

/// `(a + j)(b + j) / ((c + j)(j + 1))`
fn term_ratio(a: &Rational, b: &Rational, c: &Rational, j: usize) -> Rational {
    let jj = int(j);
    (a + &jj) * (b + &jj) / ((c + &jj) * (jj + Rational::one()))
}

fn check_c(c: &Rational) -> Result<()> {
    if nonpositive_integer(c).is_some() {
        return Err(Error::InvalidC);
    }
    Ok(())
}

/// Bits lost to cancellation: log2 of the largest term, estimated in floating point.
fn growth_bits(a: &Rational, b: &Rational, c: &Rational, zabs: f64) -> u32 {
    let (af, bf, cf) = (a.to_f64().unwrap_or(0.0), b.to_f64().unwrap_or(0.0), c.to_f64().unwrap_or(1.0));
    let mut log_t = 0.0f64;
    let mut best = 0.0f64;
    for j in 0..100_000usize {
        let jf = j as f64;
        let r = ((af + jf) * (bf + jf) / ((cf + jf) * (jf + 1.0))).abs() * zabs;
        if r == 0.0 {
            break;
        }
        log_t += r.log2();
        best = best.max(log_t);
        if r < 1.0 && jf > af.abs() + bf.abs() + cf.abs() {
            break;
        }
    }
    best.ceil().max(0.0) as u32
}

fn finite_sum(a: &Rational, b: &Rational, c: &Rational, z: &Ball, last: usize) -> Ball {
    let prec = z.prec();
    if z.is_exact() {
        let zq = z.mid().to_rational();
        let mut coeff = Rational::one();
        let mut pow = Rational::one();
        let mut sum = Rational::one();
        for j in 0..last {
            coeff *= term_ratio(a, b, c, j);
            pow *= &zq;
            sum += &coeff * &pow;
        }
        return Ball::from_rational(&sum, prec);
    }
    let mut coeffs = vec![Rational::one()];
    for j in 0..last {
        let next = &coeffs[j] * term_ratio(a, b, c, j);
        coeffs.push(next);
    }
    let wp = prec + 16;
    let zw = z.with_prec(wp);
    let mut acc = Ball::zero(wp);
    for q in coeffs.iter().rev() {
        acc = acc.mul(&zw).add(&Ball::from_rational(q, wp));
    }
    acc.with_prec(prec)
}

/// `2F1(a, b; c; z)`; requires `|z| < 1` certainly unless the series terminates.
pub fn gauss_2f1(a: &Rational, b: &Rational, c: &Rational, z: &Ball) -> Result<Ball> {
    Ok(gauss_2f1_with_tail(a, b, c, z)?.0)
}

/// As [`gauss_2f1`], also returning the truncation record.
pub fn gauss_2f1_with_tail(a: &Rational, b: &Rational, c: &Rational, z: &Ball) -> Result<(Ball, SeriesTail)> {
    check_c(c)?;
    let prec = z.prec();
    if a.is_zero() || b.is_zero() {
        return Ok((Ball::one(prec), SeriesTail::empty(prec)));
    }
    let term_a = nonpositive_integer(a);
    let term_b = nonpositive_integer(b);
    if let Some(m) = match (term_a, term_b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    } {
        return Ok((finite_sum(a, b, c, z, m as usize), SeriesTail::empty(prec)));
    }
    if z.abs_upper() >= Mag::pow2(0) {
        return Err(Error::DivergentParameters);
    }
    let guard = 24 + growth_bits(a, b, c, z.abs_upper().to_f64_upper());
    let wp = prec + guard;
    let zw = z.with_prec(wp);
    let mut sum = Ball::zero(wp);
    let mut term = Ball::one(wp);
    let mut biggest = Mag::pow2(0);
    let mut j = 0usize;
    loop {
        let tmag = term.abs_upper();
        biggest = biggest.max(tmag);
        if j > 0 && tmag < biggest.mul_2exp(-(wp as i64) - 2) {
            if let Some(tail) = tail_bound(a, b, c, &zw, j, &term) {
                let out = sum.add_error(&tail.bound.abs_upper());
                return Ok((out.with_prec(prec), tail));
            }
        }
        sum = sum.add(&term);
        term = term.mul_rational(&term_ratio(a, b, c, j)).mul(&zw);
        j += 1;
        if j > 50_000_000 {
            return Err(Error::DivergentParameters);
        }
    }
}

/// Tail `sum_{j >= n} t_j` where `term = t_n`, valid once all of
/// `a + n, b + n, c + n` are positive and the ratio bound is below one.
fn tail_bound(a: &Rational, b: &Rational, c: &Rational, z: &Ball, n: usize, term: &Ball) -> Option<SeriesTail> {
    let nn = int(n);
    let (an, bn, cn) = (a + &nn, b + &nn, c + &nn);
    if !an.is_positive() || !bn.is_positive() || !cn.is_positive() {
        return None;
    }
    // (j+a)/(j+c) is monotone in j, so its supremum over j >= n is the
    // larger of its value at n and its limit 1; same for (j+b)/(j+1).
    let one = Rational::one();
    let fa = (&an / &cn).max(one.clone());
    let fb = (&bn / (&nn + &one)).max(one);
    let prec = 64;
    let zabs = Ball::exact(z.abs_upper().to_bigfloat(), prec);
    let q = zabs.mul_rational(&(fa * fb));
    let qhi = Ball::exact(q.upper(), prec);
    if qhi.upper() >= BigFloat::one() {
        return None;
    }
    let t = Ball::exact(term.abs_upper().to_bigfloat(), prec);
    let bound = t.div(&Ball::one(prec).sub(&qhi)).ok()?;
    let bound = Ball::exact(bound.upper(), prec);
    Some(SeriesTail { n, ratio: qhi, bound })
}

/// First `n` terms plus the certified tail from index `n`; errors if the
/// ratio bound is not yet below one at `n`.
pub fn gauss_2f1_truncated(a: &Rational, b: &Rational, c: &Rational, z: &Ball, n: usize) -> Result<(Ball, SeriesTail)> {
    check_c(c)?;
    if z.abs_upper() >= Mag::pow2(0) {
        return Err(Error::DivergentParameters);
    }
    let prec = z.prec();
    let mut sum = Ball::zero(prec);
    let mut term = Ball::one(prec);
    for j in 0..n {
        sum = sum.add(&term);
        term = term.mul_rational(&term_ratio(a, b, c, j)).mul(z);
    }
    if nonpositive_integer(a).is_some_and(|m| (m as usize) < n) || nonpositive_integer(b).is_some_and(|m| (m as usize) < n) {
        return Ok((sum, SeriesTail::empty(prec)));
    }
    let tail = tail_bound(a, b, c, z, n, &term).ok_or(Error::DivergentParameters)?;
    Ok((sum, tail))
}

/// Plain partial sum of the first `n` terms (no tail).
pub fn gauss_2f1_partial_sum(a: &Rational, b: &Rational, c: &Rational, z: &Ball, n: usize) -> Ball {
    let prec = z.prec();
    let mut sum = Ball::zero(prec);
    let mut term = Ball::one(prec);
    for j in 0..n {
        sum = sum.add(&term);
        term = term.mul_rational(&term_ratio(a, b, c, j)).mul(z);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::rat;

    #[test]
    fn empty_series() {
        let z = Ball::from_rational(&rat(1, 3), 64);
        assert_eq!(gauss_2f1(&rat(7, 2), &rat(0, 1), &rat(3, 2), &z).unwrap(), Ball::one(64));
    }

    #[test]
    fn arcsin_identity_at_quarter() {
        let prec = 200;
        let z = Ball::from_rational(&rat(1, 4), prec);
        let f = gauss_2f1(&rat(1, 2), &rat(1, 2), &rat(3, 2), &z).unwrap();
        let pi3 = Ball::pi(prec).div_int(3).unwrap();
        assert!(f.intersects(&pi3));
        assert!(f.width_upper() < 1e-50);
    }

    #[test]
    fn terminating_closed_form_value() {
        let prec = 128;
        let z = Ball::from_rational(&rat(1, 4), prec);
        let f = gauss_2f1(&rat(1, 2), &rat(-5, 2), &rat(3, 2), &z).unwrap();
        let s3 = Ball::from_int(3, prec).sqrt().unwrap();
        let expected = s3.mul_rational(&rat(9, 32)).add(&Ball::pi(prec).mul_rational(&rat(5, 48)));
        assert!(f.intersects(&expected));
        assert!((f.to_f64() - 0.8143885).abs() < 1e-7);
    }

    #[test]
    fn exact_termination_is_rational() {
        let z = Ball::from_rational(&rat(1, 3), 4000);
        let f = gauss_2f1(&rat(-3, 1), &rat(5, 2), &rat(7, 2), &z).unwrap();
        // 1 - 3*(5/2)/(7/2)/3 + ... summed by hand
        let mut exact = Rational::zero();
        let mut coeff = Rational::one();
        for j in 0..=3usize {
            exact += &coeff * num_traits::pow(rat(1, 3), j);
            coeff *= term_ratio(&rat(-3, 1), &rat(5, 2), &rat(7, 2), j);
        }
        assert!(f.contains_rational(&exact));
    }

    #[test]
    fn errors() {
        let z = Ball::from_rational(&rat(1, 2), 64);
        assert_eq!(gauss_2f1(&rat(1, 2), &rat(1, 2), &rat(-2, 1), &z), Err(Error::InvalidC));
        let one = Ball::one(64);
        assert_eq!(gauss_2f1(&rat(1, 2), &rat(1, 2), &rat(3, 2), &one), Err(Error::DivergentParameters));
    }

    #[test]
    fn truncated_enclosure_holds_longer_sum() {
        let prec = 128;
        let z = Ball::from_rational(&rat(-7, 10), prec);
        let (a, b, c) = (rat(3, 2), rat(5, 1), rat(9, 2));
        let (sum, tail) = gauss_2f1_truncated(&a, &b, &c, &z, 40).unwrap();
        let enclosure = sum.add_error(&tail.bound.abs_upper());
        let longer = gauss_2f1_partial_sum(&a, &b, &c, &z, 80);
        assert!(enclosure.contains(&longer) || enclosure.intersects(&longer));
        assert!(enclosure.upper() >= longer.mid().clone() && enclosure.lower() <= longer.mid().clone());
    }
}
