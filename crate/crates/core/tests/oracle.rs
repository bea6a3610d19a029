//! Quadrature oracle for the closed-form Gaussian moments, plus the
//! classical-vs-quantum contrast check.
//!
//! The closed forms in the library never touch a grid; everything here
//! recomputes the same quantities by adaptive numerical integration of the
//! reading density and demands agreement.

use num_complex::Complex64;
use pathmeter_core::{
    classical_moments, coarse_grain, AmplitudeDistribution, ClassicalRouteModel, GaussianWindow,
    PointerState,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Adaptive Simpson quadrature with Richardson acceleration.
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        left + right + delta / 15.0
    } else {
        adaptive(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
            + adaptive(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
    }
}

fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    let f: &dyn Fn(f64) -> f64 = &f;
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    adaptive(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), eps, 48)
}

/// Integration intervals covering every term of the pointer state out to
/// 12 window widths, with overlapping spans merged.
fn support_intervals(psi: &PointerState) -> Vec<(f64, f64)> {
    let reach = 12.0 * psi.window().delta_f();
    let mut spans: Vec<(f64, f64)> = psi
        .terms()
        .iter()
        .map(|&(c, _)| (c - reach, c + reach))
        .collect();
    spans.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in spans {
        match merged.last_mut() {
            Some((_, h)) if lo <= *h => *h = h.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    merged
}

/// Moments of |Psi|^2 by quadrature: (integral, first, second), normalized.
fn quadrature_moments(psi: &PointerState) -> (f64, f64, f64) {
    let spans = support_intervals(psi);
    let scale: f64 = psi.terms().iter().map(|(_, c)| c.norm_sqr()).sum();
    let eps = 1e-13 * scale;
    let mut raw = [0.0f64; 3];
    for (n, slot) in raw.iter_mut().enumerate() {
        for &(lo, hi) in &spans {
            *slot += integrate(
                |f| f.powi(n as i32) * psi.reading_density(f),
                lo,
                hi,
                eps * (1.0 + lo.abs().max(hi.abs()).powi(n as i32)),
            );
        }
    }
    (raw[0], raw[1] / raw[0], raw[2] / raw[0])
}

fn random_distribution(rng: &mut StdRng, terms: usize) -> AmplitudeDistribution {
    loop {
        let entries: Vec<(f64, Complex64)> = (0..terms)
            .map(|k| {
                (
                    k as f64 + rng.gen_range(0.0..0.5),
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        if let Ok(dist) = AmplitudeDistribution::from_entries(entries) {
            // stay away from near-total cancellation, where a relative
            // comparison of the tiny normalization is meaningless
            if dist.interfering_probability() > 1e-3 * dist.decohered_probability() {
                return dist;
            }
        }
    }
}

#[test]
fn closed_form_moments_match_quadrature_for_random_states() {
    let mut rng = StdRng::seed_from_u64(424242);
    for trial in 0..40 {
        let terms = if trial % 2 == 0 { 2 } else { 3 };
        let phi = random_distribution(&mut rng, terms);
        let delta_f = 10f64.powf(rng.gen_range(-1.0..2.0));
        let psi = coarse_grain(&phi, GaussianWindow::new(delta_f).unwrap()).unwrap();
        let stats = psi.reading_moments().unwrap();
        let (p, m1, m2) = quadrature_moments(&psi);
        assert!(
            (stats.arrival_probability - p).abs() <= 1e-8 * p.abs(),
            "trial {trial}: P {} vs {p}",
            stats.arrival_probability
        );
        assert!(
            (stats.mean - m1).abs() <= 1e-8 * m1.abs().max(1.0),
            "trial {trial}: <f> {} vs {m1}",
            stats.mean
        );
        assert!(
            (stats.second_moment - m2).abs() <= 1e-8 * m2.abs().max(1.0),
            "trial {trial}: <f^2> {} vs {m2}",
            stats.second_moment
        );
    }
}

#[test]
fn quadrature_confirms_the_reading_density_normalization() {
    // a single unit-weight term must integrate to exactly one
    for &delta_f in &[0.05, 1.0, 30.0] {
        let phi =
            AmplitudeDistribution::from_entries([(0.7, Complex64::new(1.0, 0.0))]).unwrap();
        let psi = coarse_grain(&phi, GaussianWindow::new(delta_f).unwrap()).unwrap();
        let (p, m1, _) = quadrature_moments(&psi);
        assert!((p - 1.0).abs() < 1e-10);
        assert!((m1 - 0.7).abs() < 1e-10);
    }
}

/// The punchline contrast: a broad classical meter still averages inside
/// the route interval, while the quantum reading mean at the dark fringe
/// escapes the spectrum entirely.
#[test]
fn classical_mean_stays_in_range_while_quantum_mean_escapes() {
    let window = GaussianWindow::new(100.0).unwrap();

    let model = ClassicalRouteModel::new(vec![(1.0, 0.5), (2.0, 0.5)]).unwrap();
    let classical = classical_moments(&model, &window);
    assert!(classical.mean >= 1.0 && classical.mean <= 2.0);

    let phi = AmplitudeDistribution::from_entries([
        (1.0, Complex64::new(102.0 / 203.0, 0.0)),
        (2.0, Complex64::new(-101.0 / 203.0, 0.0)),
    ])
    .unwrap();
    let quantum = coarse_grain(&phi, window).unwrap().reading_moments().unwrap();
    assert!(quantum.mean < 1.0 || quantum.mean > 2.0);
    assert!(quantum.mean < -10.0);
}
