//! Statistics of unnormalized, possibly sign-alternating or complex-valued
//! discrete distributions.
//!
//! A distribution whose weights all stay real and positive behaves like an
//! ordinary probability distribution: its mean sits inside the support and
//! its deviation is real. Once weights are allowed to alternate in sign or
//! go complex, the same formulas can place the mean far outside the support
//! and turn the deviation imaginary. The types here compute those statistics
//! without pretending they are probabilistic.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative threshold below which the normalization counts as zero.
pub const NORM_EPS: f64 = 1e-12;

/// Support values closer than this are merged into one point.
pub const SUPPORT_MERGE_TOL: f64 = 1e-9;

/// A finite-support distribution with complex (unnormalized) weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiDistribution {
    points: Vec<(f64, Complex64)>,
}

/// Mean, second moment, deviation and normalization of a [`QuasiDistribution`].
///
/// `std_dev` is the principal square root of `second_moment - mean^2`
/// (non-negative real part; `+i` branch for negative reals).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiStatistics {
    pub mean: Complex64,
    pub second_moment: Complex64,
    pub std_dev: Complex64,
    pub normalization: Complex64,
}

impl QuasiDistribution {
    /// Builds a distribution, merging support values within
    /// [`SUPPORT_MERGE_TOL`] by summing their weights.
    pub fn new(points: impl IntoIterator<Item = (f64, Complex64)>) -> Result<Self> {
        let mut pts: Vec<(f64, Complex64)> = points.into_iter().collect();
        if pts.iter().any(|(f, w)| !f.is_finite() || !w.is_finite()) {
            return Err(Error::InvalidParameter(
                "non-finite support value or weight".into(),
            ));
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, Complex64)> = Vec::with_capacity(pts.len());
        for (f, w) in pts {
            match merged.last_mut() {
                Some((f0, w0)) if (f - *f0).abs() < SUPPORT_MERGE_TOL => *w0 += w,
                _ => merged.push((f, w)),
            }
        }
        if merged.is_empty() || merged.iter().all(|(_, w)| w.norm() == 0.0) {
            return Err(Error::InvalidParameter(
                "distribution needs at least one nonzero weight".into(),
            ));
        }
        Ok(Self { points: merged })
    }

    /// Support points and weights, ordered by support value.
    pub fn points(&self) -> &[(f64, Complex64)] {
        &self.points
    }

    /// Unnormalized sum of the weights.
    pub fn total_weight(&self) -> Complex64 {
        self.points.iter().map(|(_, w)| w).sum()
    }

    fn checked_total(&self) -> Result<Complex64> {
        let total = self.total_weight();
        let scale: f64 = self.points.iter().map(|(_, w)| w.norm()).sum();
        if total.norm() < NORM_EPS * scale {
            return Err(Error::ZeroNormalization {
                magnitude: total.norm(),
            });
        }
        Ok(total)
    }

    /// Divides every weight by the total so the result sums to one.
    pub fn normalize(&self) -> Result<Vec<(f64, Complex64)>> {
        let total = self.checked_total()?;
        Ok(self.points.iter().map(|&(f, w)| (f, w / total)).collect())
    }

    /// Mean, second moment and deviation with the usual ratio formulas,
    /// applied verbatim to the complex weights.
    pub fn statistics(&self) -> Result<QuasiStatistics> {
        let total = self.checked_total()?;
        let mut m1 = Complex64::new(0.0, 0.0);
        let mut m2 = Complex64::new(0.0, 0.0);
        for &(f, w) in &self.points {
            m1 += w * f;
            m2 += w * f * f;
        }
        let mean = m1 / total;
        let second_moment = m2 / total;
        Ok(QuasiStatistics {
            mean,
            second_moment,
            std_dev: principal_sqrt(second_moment - mean * mean),
            normalization: total,
        })
    }
}

/// Principal square root: non-negative real part, and negative reals map
/// to the +i axis. A signed-zero imaginary part would otherwise flip
/// real-weight deviations onto the -i branch.
fn principal_sqrt(z: Complex64) -> Complex64 {
    let z = if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    };
    z.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn dist(points: &[(f64, Complex64)]) -> QuasiDistribution {
        QuasiDistribution::new(points.iter().copied()).unwrap()
    }

    #[test]
    fn normalize_positive_weights() {
        let d = dist(&[(1.0, re(1.1)), (2.0, re(1.0))]);
        let w = d.normalize().unwrap();
        assert!((w[0].1 - re(11.0 / 21.0)).norm() < 1e-15);
        assert!((w[1].1 - re(10.0 / 21.0)).norm() < 1e-15);
    }

    #[test]
    fn normalize_alternating_weights() {
        let d = dist(&[(1.0, re(-1.1)), (2.0, re(1.0))]);
        let w = d.normalize().unwrap();
        assert!((w[0].1 - re(11.0)).norm() < 1e-12);
        assert!((w[1].1 - re(-10.0)).norm() < 1e-12);
    }

    #[test]
    fn normalize_single_imaginary_point() {
        let d = dist(&[(1.0, Complex64::new(0.0, 1.0))]);
        let w = d.normalize().unwrap();
        assert!((w[0].1 - re(1.0)).norm() < 1e-15);
    }

    #[test]
    fn positive_two_point_statistics() {
        let s = dist(&[(1.0, re(1.1)), (2.0, re(1.0))]).statistics().unwrap();
        assert!((s.mean - re(31.0 / 21.0)).norm() < 1e-14);
        assert!((s.mean.re - 1.4762).abs() < 1e-4);
        assert!((s.std_dev.re - 0.4994).abs() < 1e-3);
        assert!(s.std_dev.im.abs() < 1e-14);
    }

    #[test]
    fn alternating_two_point_statistics() {
        let s = dist(&[(1.0, re(-1.1)), (2.0, re(1.0))]).statistics().unwrap();
        assert!((s.mean - re(-9.0)).norm() < 1e-12);
        // principal branch: deviation comes out on the +i axis
        assert!(s.std_dev.re.abs() < 1e-12);
        assert!((s.std_dev.im - 110.0_f64.sqrt()).abs() < 1e-12);
        assert!((s.std_dev.im - 10.49).abs() < 1e-2);
    }

    #[test]
    fn one_point_statistics() {
        let s = dist(&[(5.0, re(2.0))]).statistics().unwrap();
        assert!((s.mean - re(5.0)).norm() < 1e-15);
        assert_eq!(s.std_dev.norm(), 0.0);
    }

    #[test]
    fn zero_normalization_is_rejected() {
        let d = dist(&[(1.0, re(1.0)), (2.0, re(-1.0))]);
        assert!(matches!(
            d.statistics(),
            Err(Error::ZeroNormalization { .. })
        ));
        assert!(matches!(d.normalize(), Err(Error::ZeroNormalization { .. })));
    }

    #[test]
    fn duplicate_support_is_merged() {
        let d = dist(&[(1.0, re(0.5)), (1.0 + 1e-12, re(0.5)), (2.0, re(1.0))]);
        assert_eq!(d.points().len(), 2);
        assert!((d.points()[0].1 - re(1.0)).norm() < 1e-15);
    }

    #[test]
    fn empty_and_all_zero_are_rejected() {
        assert!(QuasiDistribution::new(std::iter::empty()).is_err());
        assert!(QuasiDistribution::new([(1.0, re(0.0))]).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn positive_dist() -> impl Strategy<Value = QuasiDistribution> {
            proptest::collection::vec((-50.0..50.0f64, 1e-3..10.0f64), 1..8).prop_map(|pts| {
                QuasiDistribution::new(pts.into_iter().map(|(f, w)| (f, Complex64::new(w, 0.0))))
                    .unwrap()
            })
        }

        proptest! {
            #[test]
            fn positive_weights_give_sane_statistics(d in positive_dist()) {
                let s = d.statistics().unwrap();
                let min = d.points().first().unwrap().0;
                let max = d.points().last().unwrap().0;
                prop_assert!(s.mean.re >= min - 1e-9 && s.mean.re <= max + 1e-9);
                prop_assert!(s.mean.im.abs() < 1e-9);
                prop_assert!(s.std_dev.im.abs() < 1e-6);
                prop_assert!(s.std_dev.re >= 0.0);
            }

            #[test]
            fn statistics_are_scale_invariant(
                d in positive_dist(),
                c_re in -3.0..3.0f64,
                c_im in -3.0..3.0f64,
            ) {
                let c = Complex64::new(c_re, c_im);
                prop_assume!(c.norm() > 1e-3);
                let scaled = QuasiDistribution::new(
                    d.points().iter().map(|&(f, w)| (f, c * w)),
                ).unwrap();
                let a = d.statistics().unwrap();
                let b = scaled.statistics().unwrap();
                prop_assert!((a.mean - b.mean).norm() < 1e-9);
                // compare variances: sqrt near a double root amplifies noise
                let (va, vb) = (a.std_dev * a.std_dev, b.std_dev * b.std_dev);
                prop_assert!((va - vb).norm() < 1e-9 * (1.0 + va.norm()));
            }

            #[test]
            fn normalized_statistics_agree(d in positive_dist()) {
                let renormed = QuasiDistribution::new(d.normalize().unwrap()).unwrap();
                let a = d.statistics().unwrap();
                let b = renormed.statistics().unwrap();
                prop_assert!((a.mean - b.mean).norm() < 1e-12);
                prop_assert!((a.second_moment - b.second_moment).norm() < 1e-12 * (1.0 + a.second_moment.norm()));
                prop_assert!((a.std_dev - b.std_dev).norm() < 1e-6);
            }
        }
    }
}
