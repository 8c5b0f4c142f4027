//! Type C Kazhdan–Lusztig ideals on small patches of the symplectic flag
//! variety: Weyl group combinatorics, generic matrices, exact Gröbner
//! verification, subword complexes, pipe dreams and K-polynomials.

pub mod error;
pub mod fixtures;
pub mod klideal;
pub mod kpoly;
pub mod pipedream;
pub mod polyring;
pub mod subword;
pub mod symcell;
pub mod weyl;

pub use error::{KlgError, Result};
