//! Independent evaluation paths used to cross-check the main route.

pub mod field;
pub mod lens;
pub mod polynomial;
pub mod quadrature;
pub mod simons;

pub use field::QSqrt23;
pub use lens::{cos_power_integral, lens_exact_lambda, lens_exact_wallis, LensExact};
pub use polynomial::{arc_polynomial_integral, polynomial_m_value, Ring};
pub use quadrature::{integrate_uniform, verified_integral, Dual, Expr, QuadratureTask, Scheme};
pub use simons::{exact_simons_m, SimonsExact};
