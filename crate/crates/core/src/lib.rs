//! Exact-arithmetic toolkit for metric Lie algebras, pseudo-Riemannian Sasaki
//! structures and z-standard reduction.
//!
//! Everything is computed over the rationals with arbitrary precision; there
//! is no floating point anywhere in this crate.

#![no_std]
// Index loops mirror the tensor formulas they implement.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod contact;
pub mod forms;
pub mod lie;
pub mod linalg;
pub mod metric;
pub mod reduction;
pub mod salamon;
pub mod scalar;
pub mod standard;

pub use linalg::{LinalgError, Matrix, Signature, Subspace, Vector};
pub use scalar::Scalar;
