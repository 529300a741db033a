//! Midpoint-radius ball arithmetic over arbitrary precision binary floats.

mod ball;
mod bigfloat;
mod decimal;
mod elementary;
mod mag;

pub use self::ball::{Ball, TriBool};
pub use bigfloat::{BigFloat, Round};
pub use decimal::rational_to_fixed;
pub use mag::{Mag, MAG_BITS};
