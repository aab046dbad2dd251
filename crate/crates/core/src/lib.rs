//! Construction of genus-2 curves over prime fields with a prescribed number
//! of rational points, by gluing two elliptic curves along their 2- or
//! 3-torsion.

pub mod arith;
pub mod config;
pub mod construct;
pub mod elliptic;
pub mod error;
pub mod ff;
pub mod gluing;
pub mod quadratic_cm;
pub mod weil;

pub use error::{Error, Result};
