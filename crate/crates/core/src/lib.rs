//! Finite ordered universal algebra.

pub mod algebra;
pub mod classical;
pub mod colimit;
pub mod error;
pub mod generator;
pub mod instances;
pub mod io;
pub mod poset;
pub mod relation;
pub mod suites;
pub mod term;
pub mod variety;

pub use error::{Error, Result, Witness};
