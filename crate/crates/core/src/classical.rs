//! The classical control experiment: a stochastic system that takes one of
//! finitely many routes, read by a meter whose initial position carries
//! Gaussian noise. However broad the noise, enough trials recover the true
//! route statistics, because the readout averages a genuine probability
//! distribution rather than an amplitude.

use rand::distributions::Distribution;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Normal;

use crate::error::{Error, Result};
use crate::meter::GaussianWindow;

const PROBABILITY_TOL: f64 = 1e-12;

/// Trials per RNG stream; batch `i` draws from stream `i` of the seeded
/// generator, so results depend only on (seed, n_trials), not on how the
/// batches are scheduled.
pub const TRIAL_BATCH: u64 = 1 << 16;

/// A finite set of routes with proper (non-negative, normalized)
/// probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalRouteModel {
    routes: Vec<(f64, f64)>,
}

impl ClassicalRouteModel {
    /// `routes` holds (reading value, probability) pairs; probabilities
    /// must sum to one.
    pub fn new(routes: Vec<(f64, f64)>) -> Result<Self> {
        if routes.is_empty() {
            return Err(Error::InvalidParameter("need at least one route".into()));
        }
        if routes
            .iter()
            .any(|(f, w)| !f.is_finite() || !w.is_finite() || *w < 0.0)
        {
            return Err(Error::InvalidParameter(
                "route values must be finite and probabilities non-negative".into(),
            ));
        }
        let total: f64 = routes.iter().map(|(_, w)| w).sum();
        if (total - 1.0).abs() > PROBABILITY_TOL {
            return Err(Error::InvalidParameter(format!(
                "route probabilities sum to {total}, expected 1"
            )));
        }
        for (i, (f_i, _)) in routes.iter().enumerate() {
            for (f_j, _) in routes.iter().skip(i + 1) {
                if (f_i - f_j).abs() < 1e-9 {
                    return Err(Error::InvalidParameter(
                        "route values must be distinct".into(),
                    ));
                }
            }
        }
        Ok(Self { routes })
    }

    pub fn routes(&self) -> &[(f64, f64)] {
        &self.routes
    }

    fn sample_route(&self, rng: &mut impl Rng) -> usize {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for (i, (_, w)) in self.routes.iter().enumerate() {
            acc += w;
            if u < acc {
                return i;
            }
        }
        self.routes.len() - 1
    }
}

/// One simulated trial: which route was actually taken, and the noisy
/// meter reading (route value plus initial-position noise).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub true_route: usize,
    pub reading: f64,
}

/// Exact readout moments and the route spread they recover.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalMoments {
    pub mean: f64,
    pub second_moment: f64,
    /// Standard deviation of the route distribution after subtracting the
    /// known meter noise.
    pub recovered_sigma: f64,
}

/// Probability density of the meter reading: the route distribution
/// convolved with the meter's initial-position density `G^2` (standard
/// deviation `delta_f / 2`).
pub fn classical_reading_density(
    model: &ClassicalRouteModel,
    window: &GaussianWindow,
    f: f64,
) -> f64 {
    let sigma = window.delta_f() / 2.0;
    let norm = 1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt());
    model
        .routes()
        .iter()
        .map(|&(f_k, w_k)| {
            let z = (f - f_k) / sigma;
            w_k * norm * (-0.5 * z * z).exp()
        })
        .sum()
}

/// Exact moments of the reading distribution. The noise has zero mean, so
/// the reading mean equals the route mean; the known noise variance is
/// subtracted back out to recover the route spread.
pub fn classical_moments(model: &ClassicalRouteModel, window: &GaussianWindow) -> ClassicalMoments {
    let mean: f64 = model.routes().iter().map(|(f, w)| w * f).sum();
    let route_m2: f64 = model.routes().iter().map(|(f, w)| w * f * f).sum();
    let noise_var = window.density_second_moment();
    let second_moment = route_m2 + noise_var;
    let route_var = second_moment - mean * mean - noise_var;
    ClassicalMoments {
        mean,
        second_moment,
        recovered_sigma: route_var.max(0.0).sqrt(),
    }
}

/// Estimators gathered from simulated trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialEstimate {
    pub n_trials: u64,
    pub mean: f64,
    /// Standard error of the mean: sample std / sqrt(n).
    pub mean_std_err: f64,
    /// Route variance recovered by subtracting the known noise variance
    /// from the sample variance. May dip below zero from sampling noise.
    pub recovered_variance: f64,
    pub recovered_variance_std_err: f64,
    /// sqrt of the recovered variance, clamped at zero.
    pub recovered_sigma: f64,
    /// Delta-method standard error of `recovered_sigma`; NaN when the
    /// recovered variance is non-positive.
    pub recovered_sigma_std_err: f64,
}

/// Runs `n_trials` seeded trials and returns every record along with the
/// summary estimators. Trials are drawn in fixed-size batches with
/// per-batch RNG streams, so the outcome is reproducible from
/// (seed, n_trials) alone and independent of batch scheduling.
pub fn simulate_trials(
    model: &ClassicalRouteModel,
    window: &GaussianWindow,
    n_trials: u64,
    seed: u64,
) -> Result<(Vec<TrialRecord>, TrialEstimate)> {
    if n_trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let sigma = window.delta_f() / 2.0;
    let noise = Normal::new(0.0, sigma)
        .map_err(|e| Error::InvalidParameter(format!("bad noise width: {e}")))?;

    let mut records = Vec::with_capacity(n_trials as usize);
    let n_batches = n_trials.div_ceil(TRIAL_BATCH);
    for batch in 0..n_batches {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(batch);
        let count = TRIAL_BATCH.min(n_trials - batch * TRIAL_BATCH);
        for _ in 0..count {
            let route = model.sample_route(&mut rng);
            let reading = model.routes()[route].0 + noise.sample(&mut rng);
            records.push(TrialRecord {
                true_route: route,
                reading,
            });
        }
    }

    let n = n_trials as f64;
    let mean = records.iter().map(|r| r.reading).sum::<f64>() / n;
    let mut m2 = 0.0;
    let mut m4 = 0.0;
    for r in &records {
        let d = r.reading - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m4 /= n;
    let sample_var = m2 * n / (n - 1.0).max(1.0);
    let mean_std_err = (sample_var / n).sqrt();
    // Var(sample variance) ~ (m4 - m2^2) / n
    let var_std_err = ((m4 - m2 * m2).max(0.0) / n).sqrt();
    let recovered_variance = sample_var - window.density_second_moment();
    let recovered_sigma = recovered_variance.max(0.0).sqrt();
    let recovered_sigma_std_err = if recovered_variance > 0.0 {
        var_std_err / (2.0 * recovered_sigma)
    } else {
        f64::NAN
    };
    Ok((
        records,
        TrialEstimate {
            n_trials,
            mean,
            mean_std_err,
            recovered_variance,
            recovered_variance_std_err: var_std_err,
            recovered_sigma,
            recovered_sigma_std_err,
        },
    ))
}
