//! Catalog, verification harness and file formats on top of `sasaki-core`.

pub mod catalog;
pub mod format;
pub mod verify;

pub use sasaki_core as core;
