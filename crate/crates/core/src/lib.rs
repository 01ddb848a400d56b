//! Bound calculators and simulators for approximately-correct decoding of
//! classical strings encoded into quantum states.
//!
//! - [`linalg`]: dense complex Hermitian eigendecomposition and matrix functions.
//! - [`info`]: Shannon, von Neumann and mutual information, Holevo quantity.
//! - [`bounds`]: closed-form decoding and sample-complexity bounds.
//! - [`coding`]: concrete encoders, measurements and exact decoding success.
//! - [`learning`]: Zipf distribution, memorization learner, PAC experiments.
//! - [`delegation`]: guessing bounds and games for classically-driven blind computation.
//!
//! Data-parallel loops run on rayon when the `parallel` feature (default)
//! is enabled; see [`par::Exec`].

pub mod bits;
pub mod bounds;
pub mod coding;
pub mod delegation;
pub mod error;
pub mod info;
pub mod learning;
pub mod linalg;
pub mod par;
pub mod rng;

pub use bits::BitString;
pub use error::{Error, Result};
