//! Three-qubit GHZ-like states shared with uniformly accelerated observers,
//! evolved under amplitude damping.
//!
//! The crate evaluates genuine tripartite nonlocality (Svetlichny value),
//! genuine tripartite entanglement and l1 coherence in two ways: from first
//! principles (mode splitting, partial trace, Kraus maps) and from the
//! closed-form expressions, and audits one against the other.
//!
//! Run `cargo run --example` to list the runnable examples.

pub mod audit;
pub mod boundary;
pub mod channels;
pub mod closedform;
pub mod config;
pub mod engine;
pub mod error;
pub mod figure;
pub mod measures;
pub mod qcore;
pub mod sweep;
pub mod unruh;

pub use error::{Error, Result};
