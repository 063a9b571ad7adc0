//! Affine geometric crystals, their ultra-discretization, and the limit
//! perfect crystals `B_infinity`.
//!
//! The crate is `no_std` with `alloc`. Every computation is exact: rational
//! numbers are arbitrary precision and identities between rational maps are
//! decided symbolically.

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod b_infinity;
pub mod cartan;
pub mod posrat;
pub mod crystal_core;
pub mod geom_crystal;
pub mod harness;
pub mod report;
pub mod tropic;
