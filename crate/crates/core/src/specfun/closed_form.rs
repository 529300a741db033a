//! Exact closed forms of `2F1(1/2, m/2; 3/2; z)` for odd `m <= 1`.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::{rat, Rational};
use crate::ball::Ball;
use crate::error::{Error, Result};

/// `2F1(1/2, m/2; 3/2; z) = sqrt(1 - z) P(z) + c * arcsin(sqrt z) / sqrt z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm2F1 {
    pub m: i64,
    pub p: Poly,
    pub c: Rational,
}

/// Builds the closed form by stepping `b = m/2` down from `b = 1/2` with the
/// contiguous relation
/// `(3/2 - b) F(b - 1) = (3/2 - b - z/2) F(b) + z (1 - z) F'(b)`.
pub fn closed_form_recursion(m: i64) -> ClosedForm2F1 {
    assert!(m <= 1 && m % 2 != 0, "closed_form_recursion needs odd m <= 1");
    let mut p = Poly::zero();
    let mut c = Rational::one();
    let mut b = rat(1, 2);
    let z = Poly::new(vec![Rational::zero(), Rational::one()]);
    let z_one_minus_z = Poly::new(vec![Rational::zero(), Rational::one(), -Rational::one()]);
    while b > rat(m, 2) {
        let k = rat(3, 2) - &b;
        let next_p = z_one_minus_z
            .mul(&p.derivative())
            .sub(&z.mul(&p))
            .add(&p.scale(&k))
            .add(&Poly::constant(&c / Rational::from_integer(2.into())))
            .scale(&(Rational::one() / &k));
        c = &c * (Rational::one() - &b) / &k;
        p = next_p;
        b -= Rational::one();
    }
    ClosedForm2F1 { m, p, c }
}

impl ClosedForm2F1 {
    /// Evaluates at `z` in `(0, 1)`.
    pub fn eval(&self, z: &Ball) -> Result<Ball> {
        if !z.is_positive() || !Ball::one(z.prec()).sub(z).is_positive() {
            return Err(Error::DomainViolation("closed form needs 0 < z < 1"));
        }
        let prec = z.prec();
        let wp = prec + 32;
        let zw = z.with_prec(wp);
        let root = zw.sqrt()?;
        let s = root.arcsin()?.div(&root)?;
        let alg = Ball::one(wp).sub(&zw).sqrt()?.mul(&self.p.eval(&zw));
        Ok(alg.add(&s.mul_rational(&self.c)).with_prec(prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_case() {
        let f = closed_form_recursion(1);
        assert!(f.p.is_zero());
        assert_eq!(f.c, rat(1, 1));
    }

    #[test]
    fn published_forms() {
        let f5 = closed_form_recursion(-5);
        assert_eq!(f5.p.coeffs(), &[rat(11, 16), rat(-13, 24), rat(1, 6)]);
        assert_eq!(f5.c, rat(5, 16));
        let f7 = closed_form_recursion(-7);
        assert_eq!(f7.p.coeffs(), &[rat(93, 128), rat(-163, 192), rat(25, 48), rat(-1, 8)]);
        assert_eq!(f7.c, rat(35, 128));
    }
}
