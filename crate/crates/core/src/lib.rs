//! Quasi-Frobenius checks for finite 0-cancellative semigroups.
//!
//! Semigroups are Cayley tables over `0..n` with zero at index 0. The crate
//! compares the semigroup-side condition (double annihilators of one-sided
//! ideals) with the algebra-side conditions on the contracted semigroup
//! algebra, and generates test semigroups by erasing products of a finite
//! group with a zero adjoined.

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod ideals;
pub mod io;
pub mod modifications;
pub mod semigroup;
pub mod verifier;

pub use error::{Error, Result};
pub use semigroup::{CayleyTable, ElementSet, Side, StructureReport};
