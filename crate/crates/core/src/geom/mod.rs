//! Lens and Lawson-competitor geometry.

mod competitor;
mod escalate;
mod lawson;
mod lens;
mod pairs;

pub use competitor::{competitor_energy_quadrature, competitor_energy_specfun, m_from_parts, CompetitorEnergy, EnergyPath};
pub(crate) use competitor::{cone_disc, omega_pair};
pub use escalate::{escalate, PrecisionPolicy};
pub use lawson::{lawson_constants, LawsonConstants};
pub use lens::{lens_quantities, lens_quantities_to_width, LensQuantities};
pub use pairs::{lambda_lawson_upper, pairs_for, primary_pair, PairSelection};
