//! Analysis of K-user (parallel) interference networks under treating
//! interference as noise (TIN).
//!
//! Networks come in two flavors: Gaussian strength exponents (`gdof` mode)
//! and ADT deterministic bit levels (`deterministic` mode). The crate checks
//! the TIN-optimality condition, computes sum-GDoF / sum-capacity through
//! three independent routes (cycle-bound LP, assignment, exhaustive cyclic
//! partitions), decides sub-channel invertibility over GF(2), and renders
//! separability verdicts for parallel networks.
//!
//! All arithmetic is exact ([`Rational`]); nothing here uses floating point.
//!
//! Users are 0-based in the API and 1-based in every rendered string and
//! serialized document.

pub mod cycles;
pub mod detmodel;
pub mod document;
mod error;
pub mod exec;
pub mod fixtures;
pub mod model;
pub mod optimize;
pub mod rational;
pub mod region;
pub mod report;
pub mod sampling;

pub use error::{Error, Result};
pub use exec::Execution;
pub use model::{check_tin, quantize, Mode, ParallelNetwork, StrengthMatrix, TinVerdict};
pub use rational::Rational;
