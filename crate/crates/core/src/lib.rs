//! Exact verification of determinant identities built from Legendre
//! symbols.
//!
//! The crate evaluates determinants of Legendre-symbol matrices exactly,
//! as multilinear polynomials in up to four parameters, and compares them
//! against closed forms involving the fundamental unit and class number of
//! Q(√p). Identities that live in the cyclotomic field Q(ζ_p) are checked
//! there with exact arithmetic.

pub mod cyclotomic;
pub mod error;
pub mod identities;
pub mod linalg;
pub mod numtheory;
pub mod poly;
pub mod quadfield;

pub use error::{Error, Result};
pub use linalg::{RatMatrix, Rational};
pub use numtheory::{Mod4, OddPrime};
pub use poly::{Assignment, MultilinearPoly, Var};
