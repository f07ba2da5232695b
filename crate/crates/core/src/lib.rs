pub mod algebra;
pub mod borel;
pub mod coring;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod modules;
pub mod quasihereditary;

pub use error::{Error, Result};
