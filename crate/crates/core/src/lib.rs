//! Exact computations with regular multilinear forms, orthogonally additive
//! polynomials and their carriers on the Banach lattices `C(K)` for finite
//! `K` and `C(ω+1)`.

pub mod carriers;
pub mod error;
pub mod forms;
pub mod lattice;
pub mod localisation;
pub mod ordercont;
pub mod random;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Rational;
