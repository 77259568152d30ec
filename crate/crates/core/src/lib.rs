//! Double-pivot simplex solver for linear programs in standard form.

pub mod error;
pub mod engine;
pub mod generators;
pub mod linalg;
pub mod model;
pub mod mps_io;
pub mod pivot;
pub mod slope2v;

pub use error::{Error, Result};
