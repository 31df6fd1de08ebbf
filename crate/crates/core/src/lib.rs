pub mod coordinates;
pub mod error;
pub mod evolution;
pub mod metrics;
pub mod pwl;
pub mod random;
pub mod reference_cases;
pub mod transform;

pub use error::{Error, Result};
