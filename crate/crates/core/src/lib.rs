//! Entanglement detection for bipartite quantum states.
//!
//! The crate combines the partial-transpose (PPT) test with Uhlmann's
//! generalized concurrences, and builds and classifies the 2x4 rank-2
//! states whose concurrences all vanish: the separable ones (ZCS) and the
//! entangled ones (ZCE) that no concurrence of the tensor-product family can
//! see.

pub mod detect;
pub mod error;
pub mod io;
pub mod matops;
pub mod registry;
pub mod rng;
pub mod states;
pub mod symmetries;
pub mod tol;

pub use error::{Error, Result};
