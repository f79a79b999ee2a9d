pub mod error;
pub mod matrix;
pub mod monomial;
pub mod autiso;
mod bigstr;
pub mod canon;
pub mod config;
pub mod counting;
pub mod db;
pub mod library;
pub mod nsoks;
pub mod perm_group;
pub mod projective;
pub mod refine;
pub mod search;
pub mod structure;
pub mod symmetry;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use monomial::{HadamardPair, SignedPerm};
