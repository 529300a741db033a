//! Odd `(k, l)`: every exponent in the competitor integrals is an integer,
//! so they are integrals of polynomials, expanded binomially twice.

use num_bigint::BigInt;
use num_traits::One;

use super::field::QSqrt23;
use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::geom::{cone_disc, lawson_constants, omega_pair, CompetitorEnergy, EnergyPath};
use crate::specfun::Rational;

/// The operations the binomial sums need; implemented by balls (rounded)
/// and by `QSqrt23` (exact).
pub trait Ring: Clone {
    fn rational_like(&self, q: &Rational) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;

    fn power(&self, e: u32) -> Self {
        let mut out = self.rational_like(&Rational::one());
        for _ in 0..e {
            out = out.times(self);
        }
        out
    }
}

impl Ring for Ball {
    fn rational_like(&self, q: &Rational) -> Self {
        Ball::from_rational(q, self.prec())
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
}

impl Ring for QSqrt23 {
    fn rational_like(&self, q: &Rational) -> Self {
        QSqrt23::from_rational(q.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
}

fn binom(n: u32, k: u32) -> Rational {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(c)
}

/// `int_lo^hi u^kk (R^2 - (u + D)^2)^m du`
/// `= sum_j C(m,j) (-1)^j R^(2(m-j)) sum_i C(2j,i) D^(2j-i) [u^(kk+i+1) / (kk+i+1)]_lo^hi`.
pub fn arc_polynomial_integral<T: Ring>(kk: u32, m: u32, big_r: &T, big_d: &T, lo: &T, hi: &T) -> T {
    let zero = big_r.rational_like(&Rational::from_integer(0.into()));
    let r2 = big_r.times(big_r);
    let top = kk + 2 * m + 1;
    // antiderivative differences of u^p, p = kk+1 ..= top
    let mut lo_p = lo.power(kk + 1);
    let mut hi_p = hi.power(kk + 1);
    let mut diffs = Vec::with_capacity((2 * m + 1) as usize);
    for p in kk + 1..=top {
        let q = Rational::new(1.into(), p.into());
        diffs.push(hi_p.minus(&lo_p).times(&hi_p.rational_like(&q)));
        lo_p = lo_p.times(lo);
        hi_p = hi_p.times(hi);
    }
    let d_pows: Vec<T> = (0..=2 * m).map(|e| big_d.power(e)).collect();
    let r2_pows: Vec<T> = (0..=m).map(|e| r2.power(e)).collect();
    let mut total = zero.clone();
    for j in 0..=m {
        let mut inner = zero.clone();
        for i in 0..=2 * j {
            let c = binom(2 * j, i);
            inner = inner.plus(&d_pows[(2 * j - i) as usize].times(&diffs[i as usize]).times(&inner.rational_like(&c)));
        }
        let mut c = binom(m, j);
        if j % 2 == 1 {
            c = -c;
        }
        let term = r2_pows[(m - j) as usize].times(&inner).times(&inner.rational_like(&c));
        total = total.plus(&term);
    }
    total
}

/// `M(k, l)` for odd `k, l` from the expanded polynomial integrals, with
/// ball-valued `r, h, rho, d`.
pub fn polynomial_m_value(k: u32, l: u32, prec: u32) -> Result<CompetitorEnergy> {
    if k.is_multiple_of(2) || l.is_multiple_of(2) {
        return Err(Error::DomainViolation("polynomial_m_value needs odd k and l"));
    }
    // the alternating binomial sums cancel about (k + l) * log2(r + h) bits
    let wp = prec + 32 + 3 * (k + l);
    let c = lawson_constants(k, l, wp)?;
    let one = Ball::one(wp);
    let (ki, li) = (k as i64, l as i64);
    let u_hi = c.rho.sub(&c.d);
    let v_hi = c.r.sub(&c.h);
    let u_vol = arc_polynomial_integral(k, l.div_ceil(2), &c.rho, &c.d, &c.lambda, &u_hi);
    let v_vol = arc_polynomial_integral(l, k.div_ceil(2), &c.r, &c.h, &one, &v_hi);
    let u_per = arc_polynomial_integral(k, (l - 1) / 2, &c.rho, &c.d, &c.lambda, &u_hi);
    let v_per = arc_polynomial_integral(l, (k - 1) / 2, &c.r, &c.h, &one, &v_hi);
    let ww = omega_pair(k, l, wp);
    let volume = c
        .lambda
        .pow_int(ki + 1)?
        .add(&u_vol.mul_int(ki + 1))
        .add(&v_vol.mul_int(li + 1))
        .mul(&ww);
    let perimeter = c.rho.mul(&u_per).add(&c.r.mul(&v_per)).mul(&ww).mul_int((ki + 1) * (li + 1));
    let cone = cone_disc(&c, &ww)?;
    let p = |b: Ball| b.with_prec(prec);
    CompetitorEnergy::assemble(k, l, p(volume), p(perimeter), p(cone), EnergyPath::PolynomialExact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::rat;

    #[test]
    fn plain_polynomial() {
        // int_0^1 u (4 - (u+1)^2) du = 4/2 - (1/4 + 2/3 + 1/2) = 7/12
        let x = |q: Rational| QSqrt23::from_rational(q);
        let v = arc_polynomial_integral(1, 1, &x(rat(2, 1)), &x(rat(1, 1)), &x(rat(0, 1)), &x(rat(1, 1)));
        assert_eq!(v, x(rat(7, 12)));
    }

    #[test]
    fn table_values() {
        for (k, l, s) in [(3, 3, "6.81857964"), (5, 5, "9.26851974"), (5, 7, "10.33488774"), (1, 1, "3.61834681")] {
            let m = polynomial_m_value(k, l, 128).unwrap();
            assert_eq!(m.m_value.to_fixed(8).as_deref(), Some(s), "({k},{l})");
        }
        assert!(polynomial_m_value(2, 4, 128).is_err());
    }
}
