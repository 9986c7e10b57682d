//! Equal-rank real forms, K-Springer gradings and the character series of
//! their resolutions, with an exact rational matrix oracle.

pub mod bott;
pub mod error;
pub mod exec;
pub mod grading;
pub mod linalg;
pub mod oracle;
pub mod pipeline;
pub mod realform;
pub mod rootdata;
pub mod series;

pub use error::{Error, Result};
