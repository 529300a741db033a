//! Volume, perimeter and renormalized energy `M(k, l)` of the Lawson
//! competitor, by two independent routes.

use serde::{Deserialize, Serialize};

use super::lawson::{lawson_constants, LawsonConstants};
use crate::ball::Ball;
use crate::error::Result;
use crate::oracle::quadrature::{verified_integral, Expr, QuadratureTask, Scheme};
use crate::specfun::{appell_f1, gamma_half, gauss_2f1, rat, unit_ball_volume, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnergyPath {
    SpecialFunction,
    Quadrature,
    PolynomialExact,
}

#[derive(Clone, Debug)]
pub struct CompetitorEnergy {
    pub k: u32,
    pub l: u32,
    pub volume: Ball,
    pub perimeter: Ball,
    /// Perimeter of the cone cut off by the competitor, the part removed
    /// when renormalizing.
    pub cone_disc: Ball,
    pub m_value: Ball,
    pub path: EnergyPath,
}

impl CompetitorEnergy {
    pub fn n(&self) -> u32 {
        self.k + self.l + 2
    }

    pub(crate) fn assemble(k: u32, l: u32, volume: Ball, perimeter: Ball, cone_disc: Ball, path: EnergyPath) -> Result<Self> {
        let m_value = m_from_parts(k + l + 2, &volume, &perimeter, &cone_disc)?;
        Ok(CompetitorEnergy { k, l, volume, perimeter, cone_disc, m_value, path })
    }

    pub fn reassemble(&self) -> Result<Ball> {
        m_from_parts(self.n(), &self.volume, &self.perimeter, &self.cone_disc)
    }
}

/// `M = (perimeter - cone_disc) / volume^((n-1)/n)`
pub fn m_from_parts(n: u32, volume: &Ball, perimeter: &Ball, cone_disc: &Ball) -> Result<Ball> {
    perimeter.sub(cone_disc).div(&volume.pow_rational(n as i64 - 1, n as i64)?)
}

/// `omega_{k+1} omega_{l+1}`
pub(crate) fn omega_pair(k: u32, l: u32, prec: u32) -> Ball {
    unit_ball_volume(k + 1, prec).mul(&unit_ball_volume(l + 1, prec))
}

/// `(k+1)(l+1) omega omega lambda^k sqrt(1 + lambda^2) / (k+l+1)`
pub(crate) fn cone_disc(c: &LawsonConstants, ww: &Ball) -> Result<Ball> {
    let (k, l) = (c.k as i64, c.l as i64);
    let slant = c.lambda.sqr().add_int(1).sqrt()?;
    c.lambda
        .pow_int(k)?
        .mul(&slant)
        .mul(ww)
        .mul_int((k + 1) * (l + 1))
        .div_int(k + l + 1)
}

fn half(n: i64) -> Rational {
    rat(n, 2)
}

/// `(kk+1) / (R^2 - D^2)^e * int_L^{R-D} u^kk (R^2 - (u+D)^2)^e du` with
/// `e = two_e / 2`, written as a complete beta-type `2F1` minus an `F1`
/// for the piece `[0, L]`:
/// `Gamma(kk+2) Gamma(e+1) / Gamma(kk+e+2) (R-D)^(kk+1) 2F1(-e, kk+1; kk+e+2; -(R-D)/(R+D))
///  - L^(kk+1) F1(kk+1, -e, -e; kk+2; L/(R-D), -L/(R+D))`.
fn arc_term(kk: u32, two_e: i64, big_r: &Ball, big_d: &Ball, big_l: &Ball) -> Result<Ball> {
    let prec = big_r.prec();
    let e = half(two_e);
    let kq = Rational::from_integer((kk as i64).into());
    let one = Rational::from_integer(1.into());
    let pref = gamma_half(2 * kk + 4)
        .mul(&gamma_half((two_e + 2) as u32))
        .div(&gamma_half((2 * kk as i64 + two_e + 4) as u32))
        .to_ball(prec);
    let diff = big_r.sub(big_d);
    let sum = big_r.add(big_d);
    let z = diff.div(&sum)?.neg();
    let complete = pref
        .mul(&diff.pow_int(kk as i64 + 1)?)
        .mul(&gauss_2f1(&-e.clone(), &(&kq + &one), &(&kq + &e + rat(2, 1)), &z)?);
    let x = big_l.div(&diff)?;
    let y = big_l.div(&sum)?.neg();
    let f1 = appell_f1(&(&kq + &one), &-e.clone(), &-e, &(&kq + rat(2, 1)), &x, &y)?;
    Ok(complete.sub(&big_l.pow_int(kk as i64 + 1)?.mul(&f1)))
}

/// Working-precision guard for the special-function route: the `F1`
/// recurrences with negative `b` cancel roughly `|b| log2(1 + |x|)` bits.
fn specfun_guard(k: u32, l: u32) -> u32 {
    32 + 2 * k.max(l)
}

/// `M(k, l)` through the hypergeometric closed forms.
pub fn competitor_energy_specfun(k: u32, l: u32, prec: u32) -> Result<CompetitorEnergy> {
    let wp = prec + specfun_guard(k, l);
    let c = lawson_constants(k, l, wp)?;
    let (ki, li) = (k as i64, l as i64);
    let one = Ball::one(wp);
    let ww = omega_pair(k, l, wp);
    let (rho, d, r, h, lam) = (&c.rho, &c.d, &c.r, &c.h, &c.lambda);
    let a = arc_term(k, li + 1, rho, d, lam)?;
    let b = arc_term(l, ki + 1, r, h, &one)?;
    let cc = arc_term(k, li - 1, rho, d, lam)?;
    let dd = arc_term(l, ki - 1, r, h, &one)?;
    let rho_dd = rho.sqr().sub(&d.sqr());
    let r_hh = r.sqr().sub(&h.sqr());
    let volume = lam
        .pow_int(ki + 1)?
        .add(&rho_dd.pow_rational(li + 1, 2)?.mul(&a))
        .add(&r_hh.pow_rational(ki + 1, 2)?.mul(&b))
        .mul(&ww);
    let perimeter = rho
        .mul(&rho_dd.pow_rational(li - 1, 2)?)
        .mul(&cc)
        .mul_int(li + 1)
        .add(&r.mul(&r_hh.pow_rational(ki - 1, 2)?).mul(&dd).mul_int(ki + 1))
        .mul(&ww);
    let cone = cone_disc(&c, &ww)?;
    let p = |b: Ball| b.with_prec(prec);
    CompetitorEnergy::assemble(k, l, p(volume), p(perimeter), p(cone), EnergyPath::SpecialFunction)
}

/// `int_{phi0}^{pi/2} (R sin(phi) - D)^kk (R cos(phi))^e dphi` via the
/// substitution `u + D = R sin(phi)`, which makes the integrand smooth at
/// both ends. The result is accurate to `rel` relative to its size.
fn arc_integral(kk: u32, e: u32, big_r: &Ball, big_d: &Ball, phi0: &Ball, rel: f64, budget: usize) -> Result<Ball> {
    let prec = big_r.prec();
    let phi = Expr::var;
    let rr = || Expr::constant(big_r.clone());
    let base = rr() * phi().sin() - Expr::constant(big_d.clone());
    let f = base.pow(kk as i64) * (rr() * phi().cos()).pow(e as i64);
    let top = Ball::pi(prec).mul_2exp(-1);
    let task = QuadratureTask::new(f, phi0.clone(), top).with_scheme(Scheme::Taylor(16));
    let rough = verified_integral(&task, f64::INFINITY, budget)?;
    let scale = rough.abs_upper().to_f64_upper().max(f64::MIN_POSITIVE);
    verified_integral(&task, rel * scale, budget)
}

/// `M(k, l)` by verified quadrature of the four arc integrals, aiming at an
/// `m_value` narrower than `target_width`.
pub fn competitor_energy_quadrature(k: u32, l: u32, prec: u32, target_width: f64, budget: usize) -> Result<CompetitorEnergy> {
    let wp = prec + 16;
    let c = lawson_constants(k, l, wp)?;
    let ww = omega_pair(k, l, wp);
    let (alpha, beta) = (c.alpha(), c.beta());
    let cone = cone_disc(&c, &ww)?;
    let (ki, li) = (k as i64, l as i64);
    // M is of order n; relative error in the integrals carries over to M
    // amplified by at most a small factor
    let mut rel = target_width / (64.0 * (k + l + 2) as f64);
    loop {
        let vol_u = arc_integral(k, l + 2, &c.rho, &c.d, &beta, rel, budget)?;
        let vol_v = arc_integral(l, k + 2, &c.r, &c.h, &alpha, rel, budget)?;
        let per_u = arc_integral(k, l, &c.rho, &c.d, &beta, rel, budget)?;
        let per_v = arc_integral(l, k, &c.r, &c.h, &alpha, rel, budget)?;
        let volume = c
            .lambda
            .pow_int(ki + 1)?
            .add(&vol_u.mul_int(ki + 1))
            .add(&vol_v.mul_int(li + 1))
            .mul(&ww);
        let perimeter = c.rho.mul(&per_u).add(&c.r.mul(&per_v)).mul(&ww).mul_int((ki + 1) * (li + 1));
        let out = CompetitorEnergy::assemble(k, l, volume, perimeter, cone.clone(), EnergyPath::Quadrature)?;
        if out.m_value.width_upper() <= target_width || rel < 1e-30 {
            let p = |b: &Ball| b.with_prec(prec);
            return CompetitorEnergy::assemble(k, l, p(&out.volume), p(&out.perimeter), p(&out.cone_disc), EnergyPath::Quadrature);
        }
        rel *= 1e-3;
    }
}
