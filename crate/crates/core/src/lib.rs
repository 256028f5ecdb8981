//! Ehrhart quasi-polynomials of rational polygons, computed exactly.

pub mod constructions;
pub mod ehrhart;
pub mod error;
pub mod geometry;
pub mod json;
pub mod random;
pub mod rational;
pub mod regions;
pub mod unimodular;

pub use error::{Error, Result};
