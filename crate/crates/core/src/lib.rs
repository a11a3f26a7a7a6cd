//! Exact classification of stable non-commutative curves and derived points
//! on the stability manifold of the derived category of the acyclic
//! triangular quiver `x -> z, x -> y, y -> z`.
//!
//! Everything is computed with Gaussian rationals; phases are compared via
//! cross/dot products and never approximated.

pub mod chambers;
pub mod classifier;
pub mod error;
pub mod exact_angles;
pub mod fixtures;
pub mod oracle;
pub mod quiver_core;
pub mod service;
pub mod stability;

pub use error::{Error, Result};

/// Crate version reported in service metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
