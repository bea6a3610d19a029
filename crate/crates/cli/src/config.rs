//! Configuration schema for experiment runs: a single JSON document with a
//! `schema_version` field and a `kind` discriminator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// A complex number serialized as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexSpec(pub f64, pub f64);

impl From<ComplexSpec> for Complex64 {
    fn from(c: ComplexSpec) -> Self {
        Complex64::new(c.0, c.1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub value: f64,
    pub weight: ComplexSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteSpec {
    pub value: f64,
    pub probability: f64,
}

/// Log-spaced grid specification for sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl LogGrid {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min];
        }
        let (lo, hi) = (self.min.log10(), self.max.log10());
        (0..self.points)
            .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / (self.points - 1) as f64))
            .collect()
    }
}

/// Spin preset parameters shared by the double-slit style experiments:
/// a spin-1/2 precessing at `omega_l`, pre- and post-selected in the up
/// state, with the slit-number read out by an impulse at mid-time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinParams {
    pub omega_l: f64,
    pub total_time: f64,
    pub slices: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WeightSpec {
    Impulse { time: f64 },
    Sampled { values: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CustomParams {
    /// Row-major Hermitian matrix, entries `[re, im]`.
    pub hamiltonian: Vec<Vec<ComplexSpec>>,
    /// Eigenvalues of the measured observable in the computational basis.
    pub observable_eigenvalues: Vec<f64>,
    pub initial_state: Vec<ComplexSpec>,
    pub final_state: Vec<ComplexSpec>,
    pub total_time: f64,
    pub slices: usize,
    pub weight: WeightSpec,
    pub delta_f: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Experiment {
    /// Statistics of a hand-given weighted point set.
    Quasidist { points: Vec<WeightedPoint> },
    /// The spin preset at one window accuracy.
    DoubleSlit {
        #[serde(flatten)]
        spin: SpinParams,
        delta_f: f64,
    },
    /// The spin preset across a log grid of window accuracies.
    Sweep {
        #[serde(flatten)]
        spin: SpinParams,
        delta_f_grid: LogGrid,
    },
    /// Weak-limit convergence of the spin preset's reading mean.
    WeakAsymptotics {
        #[serde(flatten)]
        spin: SpinParams,
        delta_f_grid: Vec<f64>,
    },
    /// The classical noisy-meter control, exact moments plus trials.
    Classical {
        routes: Vec<RouteSpec>,
        delta_f: f64,
        trials: u64,
        seed: u64,
    },
    /// A fully custom finite-dimensional system.
    Custom(CustomParams),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    #[serde(flatten)]
    pub experiment: Experiment,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "schema_version {} unsupported (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        match &self.experiment {
            Experiment::Quasidist { points } => {
                if points.is_empty() {
                    return Err("quasidist: points must be non-empty".into());
                }
            }
            Experiment::DoubleSlit { spin, delta_f } => {
                validate_spin(spin)?;
                validate_delta_f(*delta_f)?;
            }
            Experiment::Sweep {
                spin,
                delta_f_grid,
            } => {
                validate_spin(spin)?;
                if delta_f_grid.points < 2 {
                    return Err("sweep: grid needs at least 2 points".into());
                }
                if !(delta_f_grid.min > 0.0 && delta_f_grid.max > delta_f_grid.min) {
                    return Err("sweep: grid needs 0 < min < max".into());
                }
            }
            Experiment::WeakAsymptotics {
                spin,
                delta_f_grid,
            } => {
                validate_spin(spin)?;
                if delta_f_grid.len() < 3 {
                    return Err("weak-asymptotics: need at least 3 grid values".into());
                }
                if delta_f_grid.windows(2).any(|w| w[1] <= w[0]) || delta_f_grid[0] <= 0.0 {
                    return Err("weak-asymptotics: grid must be positive and increasing".into());
                }
            }
            Experiment::Classical {
                routes,
                delta_f,
                trials,
                ..
            } => {
                if routes.is_empty() {
                    return Err("classical: routes must be non-empty".into());
                }
                validate_delta_f(*delta_f)?;
                if *trials == 0 {
                    return Err("classical: trials must be at least 1".into());
                }
            }
            Experiment::Custom(c) => {
                let d = c.hamiltonian.len();
                if d == 0 || c.hamiltonian.iter().any(|row| row.len() != d) {
                    return Err("custom: hamiltonian must be square and non-empty".into());
                }
                if c.observable_eigenvalues.len() != d
                    || c.initial_state.len() != d
                    || c.final_state.len() != d
                {
                    return Err("custom: eigenvalues and states must match the dimension".into());
                }
                if !(c.total_time > 0.0) {
                    return Err("custom: total_time must be positive".into());
                }
                if c.slices == 0 {
                    return Err("custom: slices must be at least 1".into());
                }
                validate_delta_f(c.delta_f)?;
            }
        }
        Ok(())
    }
}

fn validate_spin(spin: &SpinParams) -> Result<(), String> {
    if !(spin.omega_l > 0.0) {
        return Err("omega_l must be positive".into());
    }
    if !(spin.total_time > 0.0) {
        return Err("total_time must be positive".into());
    }
    if spin.slices < 2 || spin.slices % 2 != 0 {
        return Err("slices must be even and at least 2 so the impulse hits a node".into());
    }
    Ok(())
}

fn validate_delta_f(delta_f: f64) -> Result<(), String> {
    if !(delta_f > 0.0 && delta_f.is_finite()) {
        return Err("delta_f must be positive and finite".into());
    }
    Ok(())
}
