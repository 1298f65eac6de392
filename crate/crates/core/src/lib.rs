//! Genus and fiber classification for genus-2 curves `y^2 + a(x) y + b(x) = 0`
//! in characteristic two.
//!
//! The base field is either a finite field GF(2^k) or the rational function
//! field GF(2^k)(s). Everything is exact.

pub mod cli;
pub mod error;
pub mod fiber;
pub mod field;
pub mod inseparable;
pub mod model;
pub mod sample;
pub mod separable;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
