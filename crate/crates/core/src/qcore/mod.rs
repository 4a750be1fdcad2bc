//! States, observables, POVMs, instruments and the channels they induce.

pub mod json;
pub mod linalg;
mod observable;
mod state;

pub use linalg::{c64, matrix_sqrt, ComplexMatrix};
pub(crate) use observable::check_dim;
pub use observable::{
    apply_channel, luders_instrument, outcome_distribution, projective_channel, spectral_decompose, Instrument, Povm,
    ProjectiveObservable, DEFAULT_CLUSTER_TOL, OPERATOR_TOL,
};
pub use state::{DensityOperator, Distribution, PureState};
