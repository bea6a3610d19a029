//! Named experiment presets reproducing the headline numbers of the
//! two-slit spin setup and its controls.

use crate::config::{
    Experiment, ExperimentConfig, LogGrid, RouteSpec, SpinParams, WeightedPoint, ComplexSpec,
    SCHEMA_VERSION,
};

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub build: fn() -> ExperimentConfig,
}

/// Precession angle putting the post-selected state on a dark fringe:
/// the return amplitude is 1/203.
fn dark_fringe_spin() -> SpinParams {
    SpinParams {
        omega_l: 1.0,
        total_time: (1.0f64 / 203.0).acos(),
        slices: 2,
    }
}

fn wrap(experiment: Experiment) -> ExperimentConfig {
    ExperimentConfig {
        schema_version: SCHEMA_VERSION,
        experiment,
    }
}

/// Stable, ordered preset registry.
pub const PRESETS: &[Preset] = &[
    Preset {
        name: "quasidist-pos",
        description: "two positive weights at f = 1, 2: a sane mean inside the support",
        build: || {
            wrap(Experiment::Quasidist {
                points: vec![
                    WeightedPoint { value: 1.0, weight: ComplexSpec(1.1, 0.0) },
                    WeightedPoint { value: 2.0, weight: ComplexSpec(1.0, 0.0) },
                ],
            })
        },
    },
    Preset {
        name: "quasidist-neg",
        description: "one negative weight: mean -9 and an imaginary deviation",
        build: || {
            wrap(Experiment::Quasidist {
                points: vec![
                    WeightedPoint { value: 1.0, weight: ComplexSpec(-1.1, 0.0) },
                    WeightedPoint { value: 2.0, weight: ComplexSpec(1.0, 0.0) },
                ],
            })
        },
    },
    Preset {
        name: "double-slit-strong",
        description: "narrow window (0.01): per-slit weights near 0.252 / 0.248, mean near 1.5",
        build: || {
            wrap(Experiment::DoubleSlit {
                spin: dark_fringe_spin(),
                delta_f: 1e-2,
            })
        },
    },
    Preset {
        name: "double-slit-weak",
        description: "broad window (1e4): weak value -100 at arrival probability 2.4e-5",
        build: || {
            wrap(Experiment::DoubleSlit {
                spin: dark_fringe_spin(),
                delta_f: 1e4,
            })
        },
    },
    Preset {
        name: "fig2-sweep",
        description: "mean reading across accuracies 1e-2..1e4: smooth crossover 1.5 to -100",
        build: || {
            wrap(Experiment::Sweep {
                spin: dark_fringe_spin(),
                delta_f_grid: LogGrid {
                    min: 1e-2,
                    max: 1e4,
                    points: 97,
                },
            })
        },
    },
    Preset {
        name: "weak-asymptotics",
        description: "convergence of the reading mean to the weak value as the window broadens",
        build: || {
            wrap(Experiment::WeakAsymptotics {
                spin: dark_fringe_spin(),
                delta_f_grid: vec![1e2, 1e3, 1e4],
            })
        },
    },
    Preset {
        name: "classical-two-route",
        description: "classical control, equiprobable routes at 1 and 2: mean 1.5, sigma 0.5",
        build: || {
            wrap(Experiment::Classical {
                routes: vec![
                    RouteSpec { value: 1.0, probability: 0.5 },
                    RouteSpec { value: 2.0, probability: 0.5 },
                ],
                delta_f: 10.0,
                trials: 1_000_000,
                seed: 20260823,
            })
        },
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}
