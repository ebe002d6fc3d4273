//! Exact symbolic constructions for the two generic families of codimension-3
//! almost complete intersection resolutions, their generic doublings into
//! codimension-4 Gorenstein resolutions, and certification of the associated
//! matrix identities (complex conditions, colon relations, spinor-coordinate
//! minor identities) by exact arithmetic and randomized polynomial identity
//! testing over a large prime field.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the `std` feature
//! (default) only adds wall-clock timing on certificates.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod aci;
pub mod doubling;
pub mod error;
pub mod exterior;
pub mod multilinear;
pub mod ring;
pub mod spinor;
pub mod verify;

pub use error::{Error, Result};
pub use ring::{Domain, GenericRing, Parity, Poly, PrimeField, PrimeFieldConfig};
