//! Canonical filtrations of local Artinian algebras and a duality criterion
//! for the Gorenstein property, checked against the socle.

pub mod batch;
pub mod corpus;
pub mod error;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod problem;
pub mod report;
pub mod scalar;
pub mod selftest;
pub mod structure;

pub use error::{Error, Result};
