//! The von Neumann pointer: Gaussian preparation, coarse graining of an
//! amplitude distribution, the reading density and post-selection
//! probability, exact closed-form moments, amplitude-weighted (weak)
//! moments, and the accuracy sweep between the strong and weak regimes.
//!
//! A pointer state is kept symbolically as complex-weighted shifted copies
//! of the window, never gridded, so every moment here is an exact Gaussian
//! integral. Numerical quadrature exists only as a test oracle.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pathsum::AmplitudeDistribution;
use crate::quasidist::QuasiDistribution;

/// Absolute floor below which the post-selection probability is treated as
/// unreachable.
pub const ARRIVAL_EPS: f64 = 1e-300;

/// Relative level below which readings are flagged as near-singular. The
/// flag is informational: post-selection probabilities of a few 1e-5 are a
/// legitimate working regime.
pub const ARRIVAL_WARN_RELATIVE: f64 = 1e-12;

/// The real, L2-normalized Gaussian window
/// `G(f) = (2 / (pi df^2))^(1/4) exp(-f^2 / df^2)`.
///
/// Only real windows are supported; the density `G^2` has variance
/// `df^2 / 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianWindow {
    delta_f: f64,
}

impl GaussianWindow {
    pub fn new(delta_f: f64) -> Result<Self> {
        if !(delta_f > 0.0) || !delta_f.is_finite() {
            return Err(Error::InvalidParameter(
                "window accuracy must be positive and finite".into(),
            ));
        }
        Ok(Self { delta_f })
    }

    pub fn delta_f(&self) -> f64 {
        self.delta_f
    }

    /// G(f).
    pub fn amplitude(&self, f: f64) -> f64 {
        let d2 = self.delta_f * self.delta_f;
        (2.0 / (std::f64::consts::PI * d2)).powf(0.25) * (-f * f / d2).exp()
    }

    /// `integral G(f - a) G(f - b) df = exp(-(a - b)^2 / (2 df^2))`.
    pub fn overlap(&self, a: f64, b: f64) -> f64 {
        let d = a - b;
        (-d * d / (2.0 * self.delta_f * self.delta_f)).exp()
    }

    /// Second moment of the reading density `G^2`: `df^2 / 4`.
    pub fn density_second_moment(&self) -> f64 {
        self.delta_f * self.delta_f / 4.0
    }
}

/// The coarse-grained pointer amplitude: a complex-weighted sum of shifted
/// windows, `Psi(f) = sum_k c_k G(f - f_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointerState {
    terms: Vec<(f64, Complex64)>,
    window: GaussianWindow,
}

/// Exact moments of the reading density together with the post-selection
/// probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadingStatistics {
    /// `integral |Psi(f)|^2 df`.
    pub arrival_probability: f64,
    /// First moment of the normalized reading density.
    pub mean: f64,
    /// Second moment of the normalized reading density.
    pub second_moment: f64,
    /// Set when the arrival probability is tiny relative to the incoherent
    /// weight, i.e. post-selection is nearly orthogonal.
    pub near_singular: bool,
}

impl ReadingStatistics {
    pub fn variance(&self) -> f64 {
        self.second_moment - self.mean * self.mean
    }
}

/// Amplitude-weighted moments of the distribution itself, before any
/// pointer is attached. These are ratios of complex sums and need not lie
/// anywhere near the support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakMoments {
    pub mean: Complex64,
    pub second_moment: Complex64,
}

impl PointerState {
    pub fn new(
        terms: impl IntoIterator<Item = (f64, Complex64)>,
        window: GaussianWindow,
    ) -> Result<Self> {
        let dist = QuasiDistribution::new(terms)?;
        Ok(Self {
            terms: dist.points().to_vec(),
            window,
        })
    }

    pub fn terms(&self) -> &[(f64, Complex64)] {
        &self.terms
    }

    pub fn window(&self) -> &GaussianWindow {
        &self.window
    }

    /// Psi(f).
    pub fn amplitude(&self, f: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(center, c)| c * self.window.amplitude(f - center))
            .sum()
    }

    /// |Psi(f)|^2.
    pub fn reading_density(&self, f: f64) -> f64 {
        self.amplitude(f).norm_sqr()
    }

    /// `integral |Psi|^2 df`, evaluated with the closed-form pairwise
    /// window overlaps.
    pub fn arrival_probability(&self) -> f64 {
        self.pair_sum(|_, _| 1.0)
    }

    /// The reading mass attributable to each term: at narrow windows this
    /// reduces to |c_k|^2, the decohered per-pathway probabilities.
    pub fn binned_weights(&self) -> Vec<(f64, f64)> {
        self.terms
            .iter()
            .map(|&(center_k, c_k)| {
                let mass: f64 = self
                    .terms
                    .iter()
                    .map(|&(center_j, c_j)| {
                        (c_k.conj() * c_j).re * self.window.overlap(center_k, center_j)
                    })
                    .sum();
                (center_k, mass)
            })
            .collect()
    }

    /// Hermitian pairwise sum `sum_jk Re(conj(c_j) c_k) g(m_jk) S_jk`, where
    /// `m_jk` is the pair midpoint and `S_jk` the window overlap.
    fn pair_sum(&self, g: impl Fn(f64, f64) -> f64) -> f64 {
        let mut total = 0.0;
        for &(f_j, c_j) in &self.terms {
            for &(f_k, c_k) in &self.terms {
                let s = self.window.overlap(f_j, f_k);
                total += (c_j.conj() * c_k).re * g((f_j + f_k) / 2.0, s) * s;
            }
        }
        total
    }

    /// Exact first and second moments of the normalized reading density.
    pub fn reading_moments(&self) -> Result<ReadingStatistics> {
        let p = self.arrival_probability();
        if p < ARRIVAL_EPS {
            return Err(Error::VanishingPostSelection { probability: p });
        }
        let incoherent: f64 = self.terms.iter().map(|(_, c)| c.norm_sqr()).sum();
        let m1 = self.pair_sum(|m, _| m);
        let sigma2 = self.window.density_second_moment();
        let m2 = self.pair_sum(|m, _| m * m + sigma2);
        Ok(ReadingStatistics {
            arrival_probability: p,
            mean: m1 / p,
            second_moment: m2 / p,
            near_singular: p < ARRIVAL_WARN_RELATIVE * incoherent,
        })
    }
}

/// Attaches a window to an amplitude distribution: the pointer wave
/// function is exactly the sum of windows shifted to the distribution's
/// support, weighted by its amplitudes.
pub fn coarse_grain(
    distribution: &AmplitudeDistribution,
    window: GaussianWindow,
) -> Result<PointerState> {
    PointerState::new(distribution.entries().iter().copied(), window)
}

/// First and second amplitude-weighted moments, i.e. the statistics of the
/// amplitudes read as quasi-distribution weights.
pub fn weak_moments(distribution: &AmplitudeDistribution) -> Result<WeakMoments> {
    let stats = distribution.as_quasi_distribution()?.statistics()?;
    Ok(WeakMoments {
        mean: stats.mean,
        second_moment: stats.second_moment,
    })
}

/// One row of an accuracy sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub delta_f: f64,
    pub mean_reading: f64,
    pub arrival_probability: f64,
}

/// Reading mean and arrival probability across a set of window accuracies,
/// in input order.
pub fn accuracy_sweep(
    distribution: &AmplitudeDistribution,
    delta_f_values: &[f64],
) -> Result<Vec<SweepPoint>> {
    delta_f_values
        .iter()
        .map(|&delta_f| {
            let pointer = coarse_grain(distribution, GaussianWindow::new(delta_f)?)?;
            let stats = pointer.reading_moments()?;
            Ok(SweepPoint {
                delta_f,
                mean_reading: stats.mean,
                arrival_probability: stats.arrival_probability,
            })
        })
        .collect()
}

/// Estimate of the window-shape constant in the weak-limit second moment:
/// `C = (<f^2> - df^2/4 - |fw|^2) / (Re fw2 - |fw|^2)` with `fw`, `fw2` the
/// weak moments.
pub fn shape_constant(
    stats: &ReadingStatistics,
    window: &GaussianWindow,
    weak: &WeakMoments,
) -> Result<f64> {
    let fw_sq = weak.mean.norm_sqr();
    let denom = weak.second_moment.re - fw_sq;
    if denom.abs() < 1e-12 * fw_sq.max(1.0) {
        return Err(Error::DegenerateFit);
    }
    Ok((stats.second_moment - window.density_second_moment() - fw_sq) / denom)
}

/// One accuracy value of a weak-limit asymptotics report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticsPoint {
    pub delta_f: f64,
    pub mean_reading: f64,
    /// |<f> - Re fw|.
    pub deviation: f64,
    /// None when the constant is unidentifiable for this distribution.
    pub shape_constant: Option<f64>,
}

/// Convergence report of the reading mean toward the real part of the weak
/// mean as the window broadens.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakAsymptoticsReport {
    pub weak: WeakMoments,
    pub points: Vec<AsymptoticsPoint>,
    /// c such that deviation(df) <= c / df on the grid, anchored at the
    /// first grid point.
    pub envelope_constant: f64,
    /// Deviations are non-increasing along the grid.
    pub monotone: bool,
    /// Every deviation respects the c / df envelope.
    pub bounded: bool,
}

/// Checks the weak-limit behaviour of the reading mean on an increasing
/// grid of at least three window widths.
pub fn weak_asymptotics_check(
    distribution: &AmplitudeDistribution,
    delta_f_grid: &[f64],
) -> Result<WeakAsymptoticsReport> {
    if delta_f_grid.len() < 3 || delta_f_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "need at least 3 strictly increasing window widths".into(),
        ));
    }
    let weak = weak_moments(distribution)?;
    let mut points = Vec::with_capacity(delta_f_grid.len());
    for &delta_f in delta_f_grid {
        let window = GaussianWindow::new(delta_f)?;
        let stats = coarse_grain(distribution, window)?.reading_moments()?;
        points.push(AsymptoticsPoint {
            delta_f,
            mean_reading: stats.mean,
            deviation: (stats.mean - weak.mean.re).abs(),
            shape_constant: shape_constant(&stats, &window, &weak).ok(),
        });
    }
    let envelope_constant = points[0].deviation * points[0].delta_f;
    let monotone = points
        .windows(2)
        .all(|w| w[1].deviation <= w[0].deviation + 1e-15);
    let bounded = points
        .iter()
        .all(|p| p.deviation <= envelope_constant / p.delta_f * (1.0 + 1e-12) + 1e-15);
    Ok(WeakAsymptoticsReport {
        weak,
        points,
        envelope_constant,
        monotone,
        bounded,
    })
}
