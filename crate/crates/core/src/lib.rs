//! Disturbance and uncertainty tradeoffs for quantum measurements on pure states.
//!
//! The crate computes how much a measurement channel disturbs a pure state
//! under three distances, compares averages over families of measurements with
//! closed-form lower bounds, and searches numerically for the minimizing state.

pub mod constructions;
pub mod demo;
pub mod error;
pub mod measures;
pub mod optimizer;
pub mod qcore;
pub mod sweep;
pub mod tradeoffs;
pub mod verify;

pub use error::{Error, Result};
pub use measures::{DistanceKind, EntropyKind};
pub use optimizer::{Estimate, OptimizerConfig};
pub use qcore::{c64, ComplexMatrix, DensityOperator, Distribution, Instrument, Povm, ProjectiveObservable, PureState};
pub use tradeoffs::{QubitPairGeometry, TradeoffReport};
pub use verify::{Suite, SuiteReport, VerificationRecord, VerifyOptions};
