//! Complex one-dimensional potentials with real spectra generated by an
//! sl(2,C) potential algebra, their closed-form spectra and wavefunctions, and
//! an independent non-Hermitian finite-difference verifier.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod cli;
pub mod error;
pub mod grid;
pub mod identities;
pub mod models;
pub mod special;
pub mod verify;

pub use algebra::{AlgebraState, Branch, FamilyKind, FamilySolution, Ladder};
pub use error::{Error, Result};
pub use grid::{Grid, GridFunction};
pub use special::ComplexScalar;
