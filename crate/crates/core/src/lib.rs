pub mod corpus;
pub mod error;
pub mod inverse_systems;
pub mod json;
pub mod macaulay;
pub mod monomial;
pub mod oracle;
pub mod resolution;
pub mod uniqueness;
pub mod vectors;

pub use error::{Error, HVectorError, Result, SocleVectorError};
pub use vectors::{HVector, SocleVector};
