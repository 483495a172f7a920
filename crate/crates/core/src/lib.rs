//! Matroid optimization over an adaptive independence oracle.

pub mod algorithms;
pub mod cli;
mod dsu;
pub mod derived;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod ground;
pub mod instance;
pub mod lattice;
pub mod oracle;
pub mod representations;
pub mod verify;
pub mod weights;

pub use error::{MatroidError, Result};
pub use ground::{ElementId, ElementSet, GroundSet};
pub use instance::{Instance, Source};
pub use oracle::{Independence, Oracle, OracleSession, QueryLedger, Unmetered};
pub use weights::{argmin_weight, validate_weights, Weight, WeightCheck, WeightMap};

/// Weights as `f64`, the scalar used by the CLI.
pub use algorithms::RunReport;

pub type Weights = WeightMap<f64>;
pub type Report = RunReport<f64>;
/// Single-precision weights.
pub type Weights32 = WeightMap<f32>;
