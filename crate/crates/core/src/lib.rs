pub mod ball;
pub mod certify;
pub mod error;
pub mod geom;
pub mod oracle;
pub mod specfun;

pub use ball::{Ball, BigFloat, Mag, Round, TriBool};
pub use error::{Error, Result};
