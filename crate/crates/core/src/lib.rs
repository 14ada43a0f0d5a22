//! European option prices and Greeks for exponential Lévy models, computed from
//! contour integrals of the characteristic function along `Im z = v`.

pub mod contour;
pub mod error;
pub mod greeks;
pub mod models;
pub mod normal;
pub mod oracle;
pub mod pricer;
pub mod quad;
pub mod strip;
pub mod tables;
pub mod transforms;

pub use error::{Error, Result};
pub use models::{LevyModel, ModelRegistry, ModelSpec};
pub use num_complex::Complex64;
pub use strip::Strip;
