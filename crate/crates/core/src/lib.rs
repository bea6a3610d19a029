//! Amplitude distributions over a path functional, read out by a
//! finite-accuracy von Neumann pointer.
//!
//! The crate follows one measurement chain end to end: discrete-time paths
//! of a finite-dimensional system are grouped by the value of a chosen
//! functional into a complex amplitude distribution; a Gaussian pointer of
//! accuracy `delta_f` coarse-grains that distribution; and the resulting
//! reading statistics interpolate between faithful per-pathway
//! probabilities (narrow window) and amplitude-weighted averages that can
//! land far outside the observable's spectrum (broad window). A classical
//! noisy-meter control shows that no such anomaly exists for genuine
//! probability distributions.

pub mod classical;
pub mod error;
pub mod meter;
pub mod pathsum;
pub mod quantum;
pub mod quasidist;

pub use classical::{
    classical_moments, classical_reading_density, simulate_trials, ClassicalMoments,
    ClassicalRouteModel, TrialEstimate, TrialRecord,
};
pub use error::{Error, Result};
pub use meter::{
    accuracy_sweep, coarse_grain, shape_constant, weak_asymptotics_check, weak_moments,
    AsymptoticsPoint, GaussianWindow, PointerState, ReadingStatistics, SweepPoint,
    WeakAsymptoticsReport, WeakMoments,
};
pub use pathsum::{
    amplitude_distribution, functional_value, path_amplitude, AmplitudeDistribution, Path,
    TimeGrid, WeightFunction,
};
pub use quantum::{
    slit_number_observable, spin_system, transition_amplitude, MeasuredObservable, PureState,
    QuantumSystem,
};
pub use quasidist::{QuasiDistribution, QuasiStatistics};
