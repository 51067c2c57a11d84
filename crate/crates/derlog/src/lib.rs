//! Exact symbolic engine for logarithmic derivations of a divisor.
//!
//! Given a reduced polynomial f vanishing at the origin, the engine
//! computes the logarithmic derivations δ with δ(f) = a·f, selects a Saito
//! basis (coefficient determinant a unit multiple of f), builds the left
//! Weyl-algebra ideals generated by the δ_i and by the δ_i + a_i, and
//! verifies duality, free-resolution, symbol-level and comparison
//! statements about these ideals on concrete inputs, entirely over exact
//! rational arithmetic.

pub mod batch;
pub mod catalog;
pub mod dmodcheck;
mod error;
pub mod gb;
pub mod golden;
pub mod logder;
pub mod ncgb;
pub mod parse;
pub mod pipeline;
pub mod polyring;
pub mod report;
pub mod weyl;

pub use error::{EngineError, Result};

/// Engine version recorded in reports and cache keys.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
