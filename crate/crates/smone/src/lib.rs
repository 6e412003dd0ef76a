//! Exact finite-model toolkit for refinements of strong multiplicity one on
//! GL(2): cyclotomic arithmetic, finite Galois-image models, character
//! densities, Rankin-Selberg bound bookkeeping, and empirical checks on
//! synthetic Hecke data.

pub mod catalog;
pub mod charfn;
pub mod chebotarev;
pub mod cli;
pub mod empirical;
pub mod error;
pub mod exactnum;
pub mod group;
pub mod lpole;

pub use error::{Error, Result};
pub use exactnum::{CycNum, Rat};
