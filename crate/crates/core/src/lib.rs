//! Exact-arithmetic checks on quasisimple groups of Lie type: orders,
//! primitive prime divisors, low character degrees, Schur multipliers and
//! the case analysis that rules out candidate groups by these invariants.

pub mod arith;
pub mod cli;
pub mod degrees;
pub mod eliminator;
pub mod error;
pub mod groups;
pub mod multipliers;
pub mod orders;
pub mod zsigmondy;

pub use error::{Error, Result};
