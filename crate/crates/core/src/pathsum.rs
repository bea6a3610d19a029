//! Discrete-time paths over the eigenbasis of the measured observable,
//! their amplitudes, a path functional weighted by a chosen beta(t), and the
//! aggregation of all paths into a finite amplitude distribution over the
//! functional's values.
//!
//! Each time step uses the exact one-step propagator and each interior node
//! sums over the complete eigenbasis, so the amplitudes summed over all
//! paths reproduce the exact transition amplitude at every slice count N,
//! not just in the limit of large N.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::{MeasuredObservable, PureState, QuantumSystem};
use crate::quasidist::QuasiDistribution;

/// Functional values closer than this land in the same bin.
pub const BIN_TOL: f64 = 1e-9;

/// Hard cap on d^(N+1), the number of enumerated paths.
pub const ENUMERATION_CAP: u64 = 10_000_000;

/// A uniform grid of N slices over (0, t], with nodes j*dt for j = 0..=N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    total_time: f64,
    slices: usize,
}

impl TimeGrid {
    pub fn new(total_time: f64, slices: usize) -> Result<Self> {
        if !(total_time > 0.0) || !total_time.is_finite() {
            return Err(Error::InvalidParameter(
                "total time must be positive and finite".into(),
            ));
        }
        if slices == 0 {
            return Err(Error::InvalidParameter("need at least one slice".into()));
        }
        Ok(Self { total_time, slices })
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    pub fn slices(&self) -> usize {
        self.slices
    }

    pub fn dt(&self) -> f64 {
        self.total_time / self.slices as f64
    }

    pub fn node_time(&self, node: usize) -> f64 {
        self.dt() * node as f64
    }
}

/// One eigenstate index per time node, 1-based like the basis labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    indices: Vec<usize>,
}

impl Path {
    pub fn new(indices: Vec<usize>, dimension: usize, grid: &TimeGrid) -> Result<Self> {
        if indices.len() != grid.slices() + 1 {
            return Err(Error::DimensionMismatch {
                expected: grid.slices() + 1,
                found: indices.len(),
            });
        }
        if indices.iter().any(|&k| k == 0 || k > dimension) {
            return Err(Error::InvalidParameter(format!(
                "path index out of range 1..={dimension}"
            )));
        }
        Ok(Self { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }
}

/// The weight beta(t) in the path functional `integral beta(t) a(t) dt`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightFunction {
    /// One value per slice, read at the slice's left node; the functional is
    /// the left-endpoint Riemann sum `sum_j beta_j * a(t_j) * dt`.
    Sampled(Vec<f64>),
    /// A delta spike at an interior time: the functional is the eigenvalue
    /// at the node nearest the spike. A spike exactly on a shared node reads
    /// that node; one strictly inside a slice reads the slice's left node.
    Impulse(f64),
}

impl WeightFunction {
    fn validate(&self, grid: &TimeGrid) -> Result<()> {
        match self {
            WeightFunction::Sampled(values) => {
                if values.len() != grid.slices() {
                    return Err(Error::DimensionMismatch {
                        expected: grid.slices(),
                        found: values.len(),
                    });
                }
                if values.iter().any(|b| !b.is_finite()) {
                    return Err(Error::InvalidParameter(
                        "sampled weights must be finite".into(),
                    ));
                }
            }
            WeightFunction::Impulse(t0) => {
                if !(*t0 > 0.0 && *t0 < grid.total_time()) {
                    return Err(Error::InvalidParameter(
                        "impulse time must lie strictly inside (0, t)".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn impulse_node(t0: f64, grid: &TimeGrid) -> usize {
        let x = t0 / grid.dt();
        let nearest = x.round();
        if (x - nearest).abs() * grid.dt() < BIN_TOL {
            nearest as usize
        } else {
            x.floor() as usize
        }
    }

    /// Per-node functional contribution of eigenvalue `a` at node `node`.
    fn contribution(&self, node: usize, a: f64, grid: &TimeGrid) -> f64 {
        match self {
            WeightFunction::Sampled(values) => {
                if node < grid.slices() {
                    values[node] * a * grid.dt()
                } else {
                    0.0
                }
            }
            WeightFunction::Impulse(t0) => {
                if node == Self::impulse_node(*t0, grid) {
                    a
                } else {
                    0.0
                }
            }
        }
    }
}

/// The amplitude function over functional values: a finite list of
/// (f, complex amplitude) pairs whose amplitudes sum to the exact
/// transition amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeDistribution {
    entries: Vec<(f64, Complex64)>,
    grid: Option<TimeGrid>,
    weight: Option<WeightFunction>,
}

impl AmplitudeDistribution {
    /// Builds a distribution directly from (f, amplitude) pairs, merging
    /// entries within [`BIN_TOL`].
    pub fn from_entries(entries: impl IntoIterator<Item = (f64, Complex64)>) -> Result<Self> {
        let mut pts: Vec<(f64, Complex64)> = entries.into_iter().collect();
        if pts.is_empty() {
            return Err(Error::InvalidParameter(
                "amplitude distribution must be non-empty".into(),
            ));
        }
        if pts.iter().any(|(f, a)| !f.is_finite() || !a.is_finite()) {
            return Err(Error::InvalidParameter(
                "entries must be finite".into(),
            ));
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let merged = merge_sorted(pts);
        Ok(Self {
            entries: merged,
            grid: None,
            weight: None,
        })
    }

    /// Entries ordered by functional value.
    pub fn entries(&self) -> &[(f64, Complex64)] {
        &self.entries
    }

    pub fn grid(&self) -> Option<&TimeGrid> {
        self.grid.as_ref()
    }

    pub fn weight_function(&self) -> Option<&WeightFunction> {
        self.weight.as_ref()
    }

    /// Sum of all pathway amplitudes; equals the exact transition amplitude
    /// when built by [`amplitude_distribution`].
    pub fn total_amplitude(&self) -> Complex64 {
        self.entries.iter().map(|(_, a)| a).sum()
    }

    /// Probability of the post-selected outcome with interference intact.
    pub fn interfering_probability(&self) -> f64 {
        self.total_amplitude().norm_sqr()
    }

    /// Probability of the same outcome with interference fully destroyed.
    pub fn decohered_probability(&self) -> f64 {
        self.entries.iter().map(|(_, a)| a.norm_sqr()).sum()
    }

    /// Reinterprets the amplitudes as quasi-distribution weights.
    pub fn as_quasi_distribution(&self) -> Result<QuasiDistribution> {
        QuasiDistribution::new(self.entries.iter().copied())
    }
}

fn merge_sorted(sorted: Vec<(f64, Complex64)>) -> Vec<(f64, Complex64)> {
    let mut merged: Vec<(f64, Complex64)> = Vec::with_capacity(sorted.len());
    for (f, a) in sorted {
        match merged.last_mut() {
            Some((f0, a0)) if (f - *f0).abs() < BIN_TOL => *a0 += a,
            _ => merged.push((f, a)),
        }
    }
    merged
}

/// Shared machinery: the one-step propagator and the boundary amplitudes,
/// all expressed in the observable's eigenbasis. Computed once per grid.
struct StepContext {
    /// step[(j, k)] = <a_j| exp(-iH dt) |a_k>
    step: DMatrix<Complex64>,
    /// entry[k] = <a_k|I>
    entry: DVector<Complex64>,
    /// exit[k] = <F|a_k>
    exit: DVector<Complex64>,
}

fn step_context(
    system: &QuantumSystem,
    observable: &MeasuredObservable,
    initial: &PureState,
    final_state: &PureState,
    grid: &TimeGrid,
) -> Result<StepContext> {
    let d = system.dimension();
    if observable.dimension() != d || initial.dimension() != d || final_state.dimension() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: observable.dimension(),
        });
    }
    let basis = observable.eigenbasis();
    let one_step = system.propagator(grid.dt())?;
    Ok(StepContext {
        step: basis.adjoint() * one_step * basis,
        entry: basis.adjoint() * initial.amplitudes(),
        exit: (final_state.amplitudes().adjoint() * basis).transpose(),
    })
}

/// Amplitude of a single path: the chain of one-step matrix elements
/// between consecutive path nodes, capped by the boundary overlaps.
pub fn path_amplitude(
    system: &QuantumSystem,
    observable: &MeasuredObservable,
    initial: &PureState,
    final_state: &PureState,
    grid: &TimeGrid,
    path: &Path,
) -> Result<Complex64> {
    let ctx = step_context(system, observable, initial, final_state, grid)?;
    let idx = path.indices();
    if idx.len() != grid.slices() + 1 {
        return Err(Error::DimensionMismatch {
            expected: grid.slices() + 1,
            found: idx.len(),
        });
    }
    if idx.iter().any(|&k| k == 0 || k > system.dimension()) {
        return Err(Error::InvalidParameter("path index out of range".into()));
    }
    let mut amp = ctx.entry[idx[0] - 1];
    for w in idx.windows(2) {
        amp *= ctx.step[(w[1] - 1, w[0] - 1)];
    }
    Ok(amp * ctx.exit[*idx.last().unwrap() - 1])
}

/// Value of the path functional `integral beta(t) a(t) dt` along a path.
pub fn functional_value(
    path: &Path,
    observable: &MeasuredObservable,
    grid: &TimeGrid,
    weight: &WeightFunction,
) -> Result<f64> {
    weight.validate(grid)?;
    let eigenvalues = observable.eigenvalues();
    let mut f = 0.0;
    for (node, &k) in path.indices().iter().enumerate() {
        f += weight.contribution(node, eigenvalues[k - 1], grid);
    }
    Ok(f)
}

/// Enumerates every path, bins amplitudes by their functional value, and
/// returns the resulting amplitude distribution.
pub fn amplitude_distribution(
    system: &QuantumSystem,
    observable: &MeasuredObservable,
    initial: &PureState,
    final_state: &PureState,
    grid: &TimeGrid,
    weight: &WeightFunction,
) -> Result<AmplitudeDistribution> {
    weight.validate(grid)?;
    let d = system.dimension();
    let paths = (d as u128).pow(grid.slices() as u32 + 1);
    if paths > ENUMERATION_CAP as u128 {
        return Err(Error::EnumerationCapExceeded {
            dimension: d,
            slices: grid.slices(),
            paths,
            cap: ENUMERATION_CAP,
        });
    }
    let ctx = step_context(system, observable, initial, final_state, grid)?;
    let n = grid.slices();
    // contrib[node][k]: functional contribution of eigenindex k at `node`
    let contrib: Vec<Vec<f64>> = (0..=n)
        .map(|node| {
            (0..d)
                .map(|k| weight.contribution(node, observable.eigenvalues()[k], grid))
                .collect()
        })
        .collect();

    let mut bins: BTreeMap<i64, (f64, Complex64)> = BTreeMap::new();
    let mut record = |f: f64, amp: Complex64| {
        let key = (f / BIN_TOL).round() as i64;
        bins.entry(key)
            .and_modify(|(_, a)| *a += amp)
            .or_insert((f, amp));
    };

    // Depth-first walk over all index assignments, reusing prefix products.
    fn walk(
        ctx: &StepContext,
        contrib: &[Vec<f64>],
        n: usize,
        d: usize,
        node: usize,
        k: usize,
        amp: Complex64,
        f: f64,
        record: &mut impl FnMut(f64, Complex64),
    ) {
        if node == n {
            record(f, amp * ctx.exit[k]);
            return;
        }
        for k2 in 0..d {
            walk(
                ctx,
                contrib,
                n,
                d,
                node + 1,
                k2,
                amp * ctx.step[(k2, k)],
                f + contrib[node + 1][k2],
                record,
            );
        }
    }

    for k in 0..d {
        walk(
            &ctx,
            &contrib,
            n,
            d,
            0,
            k,
            ctx.entry[k],
            contrib[0][k],
            &mut record,
        );
    }

    let sorted: Vec<(f64, Complex64)> = bins.into_values().collect();
    Ok(AmplitudeDistribution {
        entries: merge_sorted(sorted),
        grid: Some(*grid),
        weight: Some(weight.clone()),
    })
}
