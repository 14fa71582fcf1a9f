//! Exact-arithmetic tools for semiclassical limits of quantum algebras:
//! PBW rewriting with dual-number specialization, Poisson brackets and
//! cores, quantum/Poisson torus centers, and stratified spectrum posets.

pub mod error;
pub mod field;
pub mod matrix;
pub mod group;
pub mod dual;
pub mod scalar;
pub mod pbw;
pub mod poisson;
pub mod ideals;
pub mod spectra;
pub mod poset;

pub use error::{AlgebraError, Result};
