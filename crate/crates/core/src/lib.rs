//! Computation with finite association schemes.

pub mod characters;
pub mod chartable;
pub mod classify;
pub mod closed;
pub mod corpus;
pub mod error;
pub mod fusion;
pub mod group;
pub mod io;
pub mod linalg;
pub mod quotient;
pub mod scheme;
pub mod wreath;

pub use error::{Result, SchemeError};
pub use scheme::{IntersectionTensor, RelSet, Scheme};
