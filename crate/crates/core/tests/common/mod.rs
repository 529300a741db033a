//! Property checks shared by the `soundness` and `acceptance` targets. Each
//! returns `Err` with the shrunk counterexample on failure.
#![allow(dead_code)]

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRng, TestRunner};
use rayon::prelude::*;

use lenscert_core::certify::{certify, certify_n, replay, CertifyOptions, FaultInjection, Verdict};
use lenscert_core::geom::{
    competitor_energy_specfun, lawson_constants, lens_quantities, pairs_for, PairSelection, PrecisionPolicy,
};
use lenscert_core::oracle::{
    exact_simons_m, integrate_uniform, lens_exact_wallis, polynomial_m_value, verified_integral, Expr, QSqrt23,
    QuadratureTask, Scheme,
};
use lenscert_core::specfun::{
    appell_f1, appell_f1_quadrature, closed_form_recursion, gauss_2f1, gauss_2f1_truncated, rat, QuadOptions, Rational,
};
use lenscert_core::{Ball, Mag, Result as CoreResult, TriBool};

pub type Check = Result<(), String>;

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Check
where
    S::Value: std::fmt::Debug,
{
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    let mut runner = TestRunner::new_with_rng(config, rng);
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn ok<T>(r: CoreResult<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (-1_000_000i64..1_000_000, 1i64..1_000_000)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| rat(n, d))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..1_000_000, 1i64..100_000).prop_map(|(n, d)| rat(n, d))
}

// ball --------------------------------------------------------------------

pub fn ball_identities() -> Check {
    run(1000, (nonzero_rational(), nonzero_rational(), 1i64..6, 1i64..6), |(r, s, p, q)| {
        let prec = 96;
        let x = Ball::from_rational(&r, prec);
        let y = Ball::from_rational(&s, prec);
        let inv = Ball::from_rational(&(Rational::one() / &r), prec);
        prop_assert!(x.mul(&inv).contains_rational(&Rational::one()));
        prop_assert!(x.add(&y).sub(&y).contains_rational(&r));
        prop_assert!(ok(x.div(&y))?.mul(&y).contains_rational(&r));
        let a = r.abs_value();
        let xa = Ball::from_rational(&a, prec);
        let back = ok(ok(xa.pow_rational(p, q))?.pow_rational(q, p))?;
        prop_assert!(back.contains_rational(&a), "({a})^({p}/{q}) round trip {back}");
        Ok(())
    })
}

trait AbsValue {
    fn abs_value(&self) -> Self;
}

impl AbsValue for Rational {
    fn abs_value(&self) -> Self {
        if *self < Rational::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

type UnaryOp = (&'static str, fn(&Ball) -> CoreResult<Ball>);

const UNARY: &[UnaryOp] = &[
    ("exp", |x| x.exp()),
    ("log", |x| x.log()),
    ("sqrt", |x| x.sqrt()),
    ("sin", |x| x.sin()),
    ("cos", |x| x.cos()),
    ("arctan", |x| x.arctan()),
    ("arcsin", |x| x.mul_2exp(-2).arcsin()),
    ("tan", |x| x.mul_2exp(-1).tan()),
    ("pow_3_7", |x| x.pow_rational(3, 7)),
    ("inv", |x| x.inv()),
    ("sqr", |x| Ok(x.sqr())),
];

/// Arguments in `(0.1, 3)`.
fn moderate() -> impl Strategy<Value = Rational> {
    (1i64..30_000).prop_map(|n| rat(n + 1000, 10_000))
}

pub fn two_precision_consistency() -> Check {
    run(300, (moderate(), moderate(), 64u32..256), |(r, s, p)| {
        for (name, f) in UNARY {
            let lo = ok(f(&Ball::from_rational(&r, p)))?;
            let hi = ok(f(&Ball::from_rational(&r, 2 * p)))?;
            prop_assert!(lo.intersects(&hi), "{name}({r}) at {p}/{}", 2 * p);
            prop_assert!(hi.width_upper() <= lo.width_upper(), "{name}({r}) widened");
        }
        let (x1, y1) = (Ball::from_rational(&r, p), Ball::from_rational(&s, p));
        let (x2, y2) = (Ball::from_rational(&r, 2 * p), Ball::from_rational(&s, 2 * p));
        for (a, b) in [(x1.add(&y1), x2.add(&y2)), (x1.mul(&y1), x2.mul(&y2)), (ok(x1.div(&y1))?, ok(x2.div(&y2))?)] {
            prop_assert!(a.intersects(&b) && b.width_upper() <= a.width_upper());
        }
        Ok(())
    })
}

pub fn monotone_inclusion() -> Check {
    run(300, (moderate(), 10i64..40), |(r, e)| {
        let narrow = Ball::from_rational(&r, 128);
        let wide = narrow.add_error(&Mag::pow2(-e));
        for (name, f) in UNARY {
            let a = ok(f(&narrow))?;
            let b = ok(f(&wide))?;
            prop_assert!(b.lower() <= a.lower() && b.upper() >= a.upper(), "{name}: wider input gave a narrower hull");
        }
        Ok(())
    })
}

pub fn certainly_less_antisymmetric() -> Check {
    run(1000, (nonzero_rational(), nonzero_rational(), 0.0f64..1.0, 0.0f64..1.0), |(a, b, ra, rb)| {
        let x = Ball::from_rational(&a, 64).add_error(&Mag::from_f64_upper(ra));
        let y = Ball::from_rational(&b, 64).add_error(&Mag::from_f64_upper(rb));
        prop_assert!(!(x.certainly_less(&y).is_true() && y.certainly_less(&x).is_true()));
        prop_assert!(x.certainly_less(&x) != TriBool::CertainlyTrue);
        Ok(())
    })
}

pub fn decimal_round_trip_widens() -> Check {
    run(300, (nonzero_rational(), 0.0f64..1e-3, 40u32..300), |(r, rad, p)| {
        let x = Ball::from_rational(&r, p).add_error(&Mag::from_f64_upper(rad));
        let y = ok(Ball::parse_auto(&x.serialize()))?;
        prop_assert!(y.contains(&x), "{} -> {}", x.serialize(), y.serialize());
        Ok(())
    })
}

// specfun -----------------------------------------------------------------

fn half(n: i64) -> Rational {
    rat(n, 2)
}

pub fn tail_bound_validity() -> Check {
    let params = (1i64..12, -9i64..12, 1i64..14, -900i64..900, 4usize..40);
    run(200, params, |(a2, b2, c2, zn, n)| {
        let (a, b, c) = (half(a2), half(b2), half(c2));
        // dyadic z keeps the ball exact
        let zq = rat(zn, 1024);
        let z = Ball::from_rational(&zq, 256);
        let Ok((sum, tail)) = gauss_2f1_truncated(&a, &b, &c, &z, n) else {
            return Ok(());
        };
        let enclosure = sum.add_error(&tail.bound.abs_upper());
        // exact partial sum of 2n terms
        let mut term = Rational::one();
        let mut exact = Rational::zero();
        for j in 0..2 * n {
            exact += &term;
            let jj = Rational::from_integer((j as i64).into());
            term = term * (&a + &jj) * (&b + &jj) / ((&c + &jj) * (&jj + Rational::one())) * &zq;
        }
        prop_assert!(enclosure.contains_rational(&exact), "a={a} b={b} c={c} z={zq} n={n}");
        Ok(())
    })
}

pub fn terminating_series_exact() -> Check {
    run(200, (0i64..15, -7i64..9, 1i64..12, -2000i64..2000), |(m, b2, c2, zn)| {
        let (a, b, c) = (rat(-m, 1), half(b2), half(c2) + rat(1, 4));
        let zq = rat(zn, 1000);
        let z = Ball::from_rational(&zq, 128);
        let got = ok(gauss_2f1(&a, &b, &c, &z))?;
        let mut term = Rational::one();
        let mut exact = Rational::zero();
        for j in 0..=m {
            exact += &term;
            let jj = Rational::from_integer(j.into());
            term = term * (&a + &jj) * (&b + &jj) / ((&c + &jj) * (&jj + Rational::one())) * &zq;
        }
        prop_assert!(got.contains_rational(&exact));
        if z.is_exact() {
            // only the final rounding to a binary midpoint
            let mag = got.abs_upper().mul_2exp(-120);
            prop_assert!(got.rad() <= mag, "radius {} not a single rounding", got.rad().to_f64_upper());
        }
        Ok(())
    })
}

pub fn recursion_matches_series() -> Check {
    for m in (1..=41).step_by(2).map(|m: i64| -m) {
        let form = closed_form_recursion(m);
        for zq in [rat(1, 8), rat(1, 4), rat(1, 2)] {
            let z = Ball::from_rational(&zq, 160);
            let series = gauss_2f1(&half(1), &half(m), &half(3), &z).map_err(|e| e.to_string())?;
            let closed = form.eval(&z).map_err(|e| e.to_string())?;
            ensure(series.intersects(&closed), || format!("m={m} z={zq}: {series} vs {closed}"))?;
        }
    }
    Ok(())
}

pub fn arcsin_identity() -> Check {
    run(100, 1i64..9000, |zn| {
        let z = Ball::from_rational(&rat(zn, 10_000), 160);
        let f = ok(gauss_2f1(&half(1), &half(1), &half(3), &z))?;
        let s = ok(z.sqrt())?;
        let g = ok(ok(s.arcsin())?.div(&s))?;
        prop_assert!(f.intersects(&g));
        Ok(())
    })
}

/// `appell_f1` against Picard quadrature on every `F1` the default
/// competitors up to `n = 24` evaluate.
pub fn f1_dual_path() -> Check {
    let mut sets = Vec::new();
    for n in 4..=24 {
        for (k, l) in pairs_for(n, &PairSelection::Default) {
            let c = lawson_constants(k, l, 128).map_err(|e| e.to_string())?;
            let one = Ball::one(128);
            for (kk, ll, big_r, big_d, big_l) in [(k, l, &c.rho, &c.d, &c.lambda), (l, k, &c.r, &c.h, &one)] {
                for two_e in [ll as i64 + 1, ll as i64 - 1] {
                    let x = big_l.div(&big_r.sub(big_d)).unwrap();
                    let y = big_l.div(&big_r.add(big_d)).unwrap().neg();
                    sets.push((kk, two_e, x, y));
                }
            }
        }
    }
    sets.par_iter().try_for_each(|(kk, two_e, x, y)| {
        let a = Rational::from_integer((*kk as i64 + 1).into());
        let c = &a + Rational::one();
        let b = -half(*two_e);
        let s = appell_f1(&a, &b, &b, &c, x, y).map_err(|e| e.to_string())?;
        let opts = QuadOptions { target_width: 1e-10, budget: 200_000 };
        let q = appell_f1_quadrature(&a, &b, &b, &c, x, y, opts).map_err(|e| e.to_string())?;
        ensure(s.intersects(&q), || format!("F1({a}, {b}, {b}; {c}; {x}, {y}): {s} vs {q}"))
    })
}

// oracle ------------------------------------------------------------------

fn poly_strategy() -> impl Strategy<Value = (Vec<Rational>, Rational, Rational)> {
    (
        prop::collection::vec((-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d)), 1..7),
        (-40i64..40).prop_map(|n| rat(n, 16)),
        (1i64..60).prop_map(|n| rat(n, 16)),
    )
        .prop_map(|(c, a, w)| (c, a.clone(), a + w))
}

fn poly_task(coeffs: &[Rational], a: &Rational, b: &Rational, prec: u32) -> (QuadratureTask, Rational) {
    let mut f = Expr::constant(Ball::zero(prec));
    let mut exact = Rational::zero();
    for (i, c) in coeffs.iter().enumerate() {
        f = f + Expr::constant(Ball::from_rational(c, prec)) * Expr::var().pow(i as i64);
        let p = i + 1;
        exact += c * (num_traits::pow(b.clone(), p) - num_traits::pow(a.clone(), p)) / Rational::from_integer((p as i64).into());
    }
    (QuadratureTask::new(f, Ball::from_rational(a, prec), Ball::from_rational(b, prec)), exact)
}

pub fn quadrature_soundness() -> Check {
    run(50, (poly_strategy(), 0usize..3), |((coeffs, a, b), scheme)| {
        let (task, exact) = poly_task(&coeffs, &a, &b, 128);
        let scheme = [Scheme::IntervalSum, Scheme::MidpointDerivative, Scheme::Taylor(8)][scheme];
        let width = if scheme == Scheme::IntervalSum { 1e-1 } else { 1e-6 };
        let v = ok(verified_integral(&task.with_scheme(scheme), width * (1.0 + exact_size(&exact)), 1 << 16))?;
        prop_assert!(v.contains_rational(&exact), "{v} misses {exact}");
        Ok(())
    })
}

fn exact_size(q: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(0.0).abs()
}

pub fn quadrature_refinement() -> Check {
    run(50, (poly_strategy(), 1usize..16), |((coeffs, a, b), n)| {
        let (task, exact) = poly_task(&coeffs, &a, &b, 128);
        let mut coarse = task.clone();
        coarse.subdivisions = n;
        let mut fine = task;
        fine.subdivisions = 2 * n;
        let c = ok(integrate_uniform(&coarse))?;
        let f = ok(integrate_uniform(&fine))?;
        prop_assert!(c.intersects(&f) && f.contains_rational(&exact));
        // once the discretization error is gone only rounding is left, and
        // twice the pieces may round a little more
        let m = exact_size(&a).max(exact_size(&b)).max(1.0);
        let sup: f64 = coeffs.iter().enumerate().map(|(i, c)| exact_size(c) * m.powi(i as i32)).sum();
        let floor = 8.0 * n as f64 * 2f64.powi(-120) * sup * exact_size(&(&b - &a)).max(1.0);
        prop_assert!(f.width_upper() <= c.width_upper() + floor, "N={n}: {} > {}", f.width_upper(), c.width_upper());
        Ok(())
    })
}

pub fn qsqrt23_inverse() -> Check {
    let coef = (-1000i64..1000, 1i64..50).prop_map(|(n, d)| rat(n, d));
    run(200, (coef.clone(), coef.clone(), coef.clone(), coef), |(a, b, c, d)| {
        let x = QSqrt23::new(a, b, c, d);
        prop_assume!(!x.is_zero());
        let y = x.inverse().expect("nonzero");
        prop_assert_eq!(&x * &y, QSqrt23::one());
        prop_assert!(x.to_ball(128).mul(&y.to_ball(128)).intersects(&Ball::one(128)));
        Ok(())
    })
}

pub fn lens_wallis_matches_specfun() -> Check {
    (3..=40u32).into_par_iter().try_for_each(|n| {
        let q = lens_quantities(n, 160).map_err(|e| e.to_string())?;
        let (cap, vol) = lens_exact_wallis(n);
        let omega = lenscert_core::specfun::unit_ball_volume(n - 1, 160);
        let cap_b = cap.to_ball(160).mul(&omega);
        let vol_b = vol.to_ball(160).mul(&omega);
        ensure(cap_b.intersects(&q.cap_area) && vol_b.intersects(&q.lens_volume), || format!("n={n}"))?;
        ensure(q.reassemble().map_err(|e| e.to_string())? == q.lambda_plane, || format!("n={n}: reassembly"))
    })
}

pub fn polynomial_matches_specfun() -> Check {
    let mut pairs = Vec::new();
    for k in (1..18).step_by(2) {
        for l in (1..18).step_by(2) {
            if k + l <= 18 && 3 * k > l && 3 * l > k {
                pairs.push((k, l));
            }
        }
    }
    pairs.par_iter().try_for_each(|&(k, l)| {
        let p = polynomial_m_value(k, l, 128).map_err(|e| e.to_string())?;
        let s = competitor_energy_specfun(k, l, 128).map_err(|e| e.to_string())?;
        ensure(p.m_value.intersects(&s.m_value), || format!("({k},{l}): {} vs {}", p.m_value, s.m_value))
    })
}

pub fn simons_matches_polynomial() -> Check {
    for k in [1u32, 3, 5, 7, 9] {
        let e = exact_simons_m(k, 160).map_err(|e| e.to_string())?;
        let p = polynomial_m_value(k, k, 160).map_err(|e| e.to_string())?;
        ensure(e.assembled.intersects(&p.m_value), || format!("k={k}"))?;
        // exact field data: rebuild V and N from the primitive parts
        ensure(e.den.scale(&e.den_scale) == e.volume && e.num.scale(&e.num_scale) == e.energy, || format!("k={k}: content"))?;
    }
    Ok(())
}

// geom --------------------------------------------------------------------

fn valid_pairs(max_sum: u32) -> Vec<(u32, u32)> {
    (4..=max_sum + 2).flat_map(|n| pairs_for(n, &PairSelection::All)).collect()
}

pub fn corner_consistency() -> Check {
    valid_pairs(30).par_iter().try_for_each(|&(k, l)| {
        let c = lawson_constants(k, l, 128).map_err(|e| e.to_string())?;
        ensure(c.corner_v().intersects(&c.lambda.sqr()), || format!("({k},{l}) v-corner"))?;
        ensure(c.corner_u().intersects(&Ball::one(128)), || format!("({k},{l}) u-corner"))
    })
}

pub fn m_symmetry() -> Check {
    valid_pairs(30).par_iter().filter(|(k, l)| k < l).try_for_each(|&(k, l)| {
        let a = competitor_energy_specfun(k, l, 128).map_err(|e| e.to_string())?;
        let b = competitor_energy_specfun(l, k, 128).map_err(|e| e.to_string())?;
        ensure(a.m_value.intersects(&b.m_value), || format!("M({k},{l}) = {} vs M({l},{k}) = {}", a.m_value, b.m_value))?;
        ensure(a.reassemble().map_err(|e| e.to_string())? == a.m_value, || format!("({k},{l}) reassembly"))
    })
}

// certify -----------------------------------------------------------------

fn fixed(p: u32) -> CertifyOptions {
    CertifyOptions { policy: PrecisionPolicy { start: p, max: p }, agreement_max_n: 0, ..CertifyOptions::default() }
}

pub fn verdict_stability() -> Check {
    run(12, 8u32..=120, |n| {
        let mut proven = false;
        for p in [128, 256, 512] {
            let v = ok(certify_n(n, &fixed(p)))?.verdict;
            prop_assert!(!(proven && v != Verdict::Proven), "n={n} lost its proof at {p} bits");
            proven |= v == Verdict::Proven;
        }
        prop_assert!(proven);
        Ok(())
    })
}

pub fn certificate_replay() -> Check {
    let opts = CertifyOptions { agreement_max_n: 12, ..CertifyOptions::default() };
    let set = certify(8, 40, &opts).map_err(|e| e.to_string())?;
    for c in &set.certificates {
        let v = replay(c).map_err(|e| e.to_string())?;
        ensure(v == c.verdict, || format!("n={}: replay {v:?} vs {:?}", c.n, c.verdict))?;
        // a tampered entry cannot replay as a proof
        let mut bad = c.clone();
        bad.entries[0].m_value = bad.lambda_plane.clone();
        ensure(replay(&bad).map_err(|e| e.to_string())? != Verdict::Proven, || format!("n={}: tampered", c.n))?;
    }
    let text = serde_json::to_string(&set).map_err(|e| e.to_string())?;
    let back: lenscert_core::certify::CertificateSet = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(back == set, || "JSON round trip".into())
}

pub fn determinism() -> Check {
    let strip = |mut s: lenscert_core::certify::CertificateSet| {
        s.certificates.iter_mut().for_each(|c| c.timestamp = 0);
        serde_json::to_string(&s).expect("serialize")
    };
    let opts = CertifyOptions { agreement_max_n: 10, ..CertifyOptions::default() };
    let a = strip(certify(8, 30, &opts).map_err(|e| e.to_string())?);
    let b = strip(certify(8, 30, &opts).map_err(|e| e.to_string())?);
    ensure(a == b, || "certificates differ between runs".into())
}

pub fn no_false_proofs() -> Check {
    let opts = CertifyOptions { fault: Some(FaultInjection::CollapseSpecfun), ..CertifyOptions::default() };
    for n in [8, 9, 10, 12] {
        let c = certify_n(n, &opts).map_err(|e| e.to_string())?;
        ensure(c.verdict == Verdict::Failed, || format!("n={n}: collapsed radii gave {:?}", c.verdict))?;
    }
    let forced = CertifyOptions {
        fault: Some(FaultInjection::ForceMEqualsLambda),
        policy: PrecisionPolicy { start: 128, max: 512 },
        ..CertifyOptions::default()
    };
    let c = certify_n(8, &forced).map_err(|e| e.to_string())?;
    ensure(c.verdict == Verdict::Undecided, || format!("forced equality gave {:?}", c.verdict))
}

/// Every check of the soundness suite, by name.
pub fn soundness_suite() -> Vec<(&'static str, fn() -> Check)> {
    vec![
        ("ball identities", ball_identities),
        ("two-precision consistency", two_precision_consistency),
        ("monotone inclusion", monotone_inclusion),
        ("certainly_less antisymmetry", certainly_less_antisymmetric),
        ("decimal round trip", decimal_round_trip_widens),
        ("tail-bound validity", tail_bound_validity),
        ("terminating series exact", terminating_series_exact),
        ("recursion vs series", recursion_matches_series),
        ("arcsin identity", arcsin_identity),
        ("F1 dual path", f1_dual_path),
        ("quadrature soundness", quadrature_soundness),
        ("quadrature refinement", quadrature_refinement),
        ("QSqrt23 inverse", qsqrt23_inverse),
        ("Wallis lens vs 2F1 lens", lens_wallis_matches_specfun),
        ("polynomial vs specfun", polynomial_matches_specfun),
        ("exact field vs polynomial", simons_matches_polynomial),
        ("corner consistency", corner_consistency),
        ("M symmetry", m_symmetry),
        ("verdict stability", verdict_stability),
        ("certificate replay", certificate_replay),
        ("determinism", determinism),
        ("no false proofs", no_false_proofs),
    ]
}
