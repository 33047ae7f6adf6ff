//! Command-line and HTTP front ends for the motionforge engine.

pub mod documents;
pub mod error;
pub mod ops;
pub mod service;

pub use error::{ServiceError, ERROR_CODES};
