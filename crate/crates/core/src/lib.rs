//! p-adic hypergeometric functions of Dwork type, of logarithmic type and
//! their hatted variant, computed over truncated p-adic arithmetic, together
//! with finite checkers for the congruences and transformation formulas they
//! satisfy.

pub mod cli;
pub mod error;
pub mod hyper;
pub mod interp;
pub mod padic;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
