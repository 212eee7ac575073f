//! Power-basis indices, Chebotarev-Kummer obstruction prime sets and
//! one-prime fixed-sign local obstruction certificates for pure fields
//! `Q(m^{1/n})` and Eisenstein-type one-parameter families, together with
//! the desk-scale density experiments built on them.

#![allow(clippy::manual_is_multiple_of, clippy::needless_range_loop)]

pub mod arith;
pub mod error;
pub mod experiments;
pub mod families;
pub mod linalg;
pub mod obstruction;
pub mod orders;
pub mod poly;
pub mod purefield;

pub use error::{Error, Result};

use num_bigint::BigInt;

/// Serialize a big integer as a decimal JSON string.
pub fn serialize_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
