//! Exact computation of the metabelian de Rham period map of a once-punctured
//! elliptic curve through the algebraic KZB connection.

pub mod curve;
pub mod error;
pub mod formal;
pub mod freealg;
pub mod kzb;
pub mod metabelian;
pub mod par;
pub mod period;
pub mod suites;

pub use error::{Error, Result};
