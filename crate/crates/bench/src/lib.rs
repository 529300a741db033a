//! Criterion benchmarks for lenscert; see `benches/`.

use lenscert_core::specfun::rat;
use lenscert_core::Ball;

/// The `F1` arguments of the balanced `n = 8` competitor.
pub fn competitor_f1_args(prec: u32) -> (Ball, Ball) {
    let r = Ball::from_int(6, prec).sqrt().unwrap().add(&Ball::from_int(2, prec).sqrt().unwrap());
    let h = Ball::from_int(3, prec).sqrt().unwrap().add_int(1);
    let x = r.sub(&h).inv().unwrap();
    let y = r.add(&h).inv().unwrap().neg();
    (x, y)
}

pub fn quarter(prec: u32) -> Ball {
    Ball::from_rational(&rat(1, 4), prec)
}
