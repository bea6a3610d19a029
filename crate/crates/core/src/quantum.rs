//! Finite-dimensional state and operator algebra: Hamiltonians, exact
//! propagators via eigendecomposition, transition amplitudes, and the
//! spin-1/2 preset. Units are chosen with hbar = 1 throughout, so
//! Hamiltonian entries are angular frequencies.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

const HERMITICITY_TOL: f64 = 1e-12;
const ORTHONORMALITY_TOL: f64 = 1e-12;
const NORM_TOL: f64 = 1e-12;

/// A closed system with a time-independent Hermitian Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumSystem {
    hamiltonian: DMatrix<Complex64>,
    labels: Vec<String>,
}

impl QuantumSystem {
    /// Basis labels are 1-indexed (`|1>`, `|2>`, ...) when omitted.
    pub fn new(hamiltonian: DMatrix<Complex64>, labels: Option<Vec<String>>) -> Result<Self> {
        let d = hamiltonian.nrows();
        if d == 0 || hamiltonian.ncols() != d {
            return Err(Error::InvalidParameter(
                "Hamiltonian must be square and non-empty".into(),
            ));
        }
        if hamiltonian.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidParameter(
                "Hamiltonian entries must be finite".into(),
            ));
        }
        let deviation = (&hamiltonian - hamiltonian.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if deviation > HERMITICITY_TOL {
            return Err(Error::InvalidParameter(format!(
                "Hamiltonian is not Hermitian (max deviation {deviation:.3e})"
            )));
        }
        let labels = labels.unwrap_or_else(|| (1..=d).map(|k| format!("|{k}>")).collect());
        if labels.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: labels.len(),
            });
        }
        Ok(Self {
            hamiltonian,
            labels,
        })
    }

    pub fn dimension(&self) -> usize {
        self.hamiltonian.nrows()
    }

    pub fn hamiltonian(&self) -> &DMatrix<Complex64> {
        &self.hamiltonian
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// exp(-iHt), exact through the Hermitian eigendecomposition of H.
    pub fn propagator(&self, t: f64) -> Result<DMatrix<Complex64>> {
        if !t.is_finite() {
            return Err(Error::InvalidParameter("time must be finite".into()));
        }
        let eig = self.hamiltonian.clone().symmetric_eigen();
        let phases = DMatrix::from_diagonal(
            &eig.eigenvalues
                .map(|omega| (Complex64::new(0.0, -1.0) * omega * t).exp()),
        );
        Ok(&eig.eigenvectors * phases * eig.eigenvectors.adjoint())
    }
}

/// An observable given by its (real) eigenvalues and orthonormal eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredObservable {
    eigenvalues: Vec<f64>,
    eigenbasis: DMatrix<Complex64>,
}

impl MeasuredObservable {
    /// `eigenbasis` holds the eigenvectors as columns, `eigenvalues[k]`
    /// belonging to column `k`. Degenerate eigenvalues are allowed.
    pub fn new(eigenvalues: Vec<f64>, eigenbasis: DMatrix<Complex64>) -> Result<Self> {
        let d = eigenbasis.nrows();
        if eigenbasis.ncols() != d || eigenvalues.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: eigenvalues.len().max(eigenbasis.ncols()),
            });
        }
        if eigenvalues.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidParameter(
                "eigenvalues must be finite".into(),
            ));
        }
        let gram = eigenbasis.adjoint() * &eigenbasis;
        let deviation = (&gram - DMatrix::<Complex64>::identity(d, d))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if deviation > ORTHONORMALITY_TOL {
            return Err(Error::InvalidParameter(format!(
                "eigenbasis is not orthonormal (max deviation {deviation:.3e})"
            )));
        }
        Ok(Self {
            eigenvalues,
            eigenbasis,
        })
    }

    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenbasis(&self) -> &DMatrix<Complex64> {
        &self.eigenbasis
    }
}

/// A normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() || amplitudes.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidParameter(
                "state must be non-empty and finite".into(),
            ));
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!(
                "state norm is {norm}, expected 1"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// `|index>` in a `d`-dimensional space; `index` is 1-based.
    pub fn basis_state(d: usize, index: usize) -> Result<Self> {
        if index == 0 || index > d {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range 1..={d}"
            )));
        }
        let mut v = DVector::from_element(d, Complex64::new(0.0, 0.0));
        v[index - 1] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes: v })
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }
}

/// `<F|U|I>`.
pub fn transition_amplitude(
    final_state: &PureState,
    propagator: &DMatrix<Complex64>,
    initial_state: &PureState,
) -> Result<Complex64> {
    let d = propagator.nrows();
    if final_state.dimension() != d || initial_state.dimension() != d || propagator.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: final_state.dimension().min(initial_state.dimension()),
        });
    }
    Ok((final_state.amplitudes().adjoint() * propagator * initial_state.amplitudes())[(0, 0)])
}

/// Spin-1/2 precessing at Larmor frequency `omega_l`: H = omega_l * sigma_x
/// in the z-basis {|1> = up, |2> = down}.
pub fn spin_system(omega_l: f64) -> Result<QuantumSystem> {
    if !(omega_l > 0.0) || !omega_l.is_finite() {
        return Err(Error::InvalidParameter(
            "Larmor frequency must be positive and finite".into(),
        ));
    }
    let w = Complex64::new(omega_l, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let h = DMatrix::from_row_slice(2, 2, &[zero, w, w, zero]);
    QuantumSystem::new(h, Some(vec!["|1>".into(), "|2>".into()]))
}

/// The canonical slit-number observable 1*|1><1| + 2*|2><2|.
pub fn slit_number_observable() -> MeasuredObservable {
    MeasuredObservable::new(vec![1.0, 2.0], DMatrix::identity(2, 2))
        .expect("identity basis is orthonormal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn max_abs(m: &DMatrix<Complex64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub(crate) fn random_hermitian(rng: &mut impl Rng, d: usize) -> DMatrix<Complex64> {
        let raw = DMatrix::from_fn(d, d, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        (raw.clone() + raw.adjoint()) * Complex64::new(0.5, 0.0)
    }

    #[test]
    fn spin_hamiltonian_is_sigma_x_scaled() {
        let s = spin_system(1.0).unwrap();
        assert_eq!(s.hamiltonian()[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(s.hamiltonian()[(0, 0)], Complex64::new(0.0, 0.0));
        let s2 = spin_system(2.0).unwrap();
        assert_eq!(s2.hamiltonian()[(1, 0)], Complex64::new(2.0, 0.0));
        assert!(spin_system(0.0).is_err());
        assert!(spin_system(-1.0).is_err());
    }

    #[test]
    fn canonical_observable_eigenvalues() {
        assert_eq!(slit_number_observable().eigenvalues(), &[1.0, 2.0]);
    }

    #[test]
    fn propagator_at_zero_time_is_identity() {
        let s = spin_system(1.3).unwrap();
        let u = s.propagator(0.0).unwrap();
        assert!(max_abs(&(u - DMatrix::<Complex64>::identity(2, 2))) < 1e-14);
    }

    #[test]
    fn quarter_turn_gives_minus_i_sigma_x() {
        let s = spin_system(1.0).unwrap();
        let u = s.propagator(std::f64::consts::FRAC_PI_2).unwrap();
        assert!((u[(0, 1)] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((u[(1, 0)] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!(u[(0, 0)].norm() < 1e-12);
    }

    #[test]
    fn dark_fringe_return_amplitude() {
        let t = (1.0f64 / 203.0).acos();
        let s = spin_system(1.0).unwrap();
        let u = s.propagator(t).unwrap();
        let one = PureState::basis_state(2, 1).unwrap();
        let a = transition_amplitude(&one, &u, &one).unwrap();
        assert!((a - Complex64::new(1.0 / 203.0, 0.0)).norm() < 1e-14);
        assert!((a.norm_sqr() - 1.0 / 41209.0).abs() < 1e-18);
    }

    #[test]
    fn spin_flip_amplitude_at_quarter_turn() {
        let s = spin_system(1.0).unwrap();
        let u = s.propagator(std::f64::consts::FRAC_PI_2).unwrap();
        let one = PureState::basis_state(2, 1).unwrap();
        let two = PureState::basis_state(2, 2).unwrap();
        let a = transition_amplitude(&two, &u, &one).unwrap();
        assert!((a - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        let id = transition_amplitude(&one, &DMatrix::identity(2, 2), &one).unwrap();
        assert!((id - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn spin_propagator_closed_form() {
        let omega = 0.73;
        let s = spin_system(omega).unwrap();
        for &t in &[0.1, 1.0, 2.5, -1.7] {
            let u = s.propagator(t).unwrap();
            let (c, sn) = ((omega * t).cos(), (omega * t).sin());
            assert!((u[(0, 0)] - Complex64::new(c, 0.0)).norm() < 1e-12);
            assert!((u[(1, 1)] - Complex64::new(c, 0.0)).norm() < 1e-12);
            assert!((u[(0, 1)] - Complex64::new(0.0, -sn)).norm() < 1e-12);
            assert!((u[(1, 0)] - Complex64::new(0.0, -sn)).norm() < 1e-12);
        }
    }

    #[test]
    fn random_propagators_are_unitary_and_compose() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let d = rng.gen_range(2..=4);
            let sys = QuantumSystem::new(random_hermitian(&mut rng, d), None).unwrap();
            let (t1, t2) = (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
            let u1 = sys.propagator(t1).unwrap();
            let u2 = sys.propagator(t2).unwrap();
            let both = sys.propagator(t1 + t2).unwrap();
            assert!(max_abs(&(u1.adjoint() * &u1 - DMatrix::identity(d, d))) < 1e-10);
            assert!(max_abs(&(&u1 * &u2 - both)) < 1e-10);
        }
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        let z = Complex64::new(0.0, 1.0);
        let not_hermitian = DMatrix::from_row_slice(2, 2, &[z, z, z, z]);
        assert!(QuantumSystem::new(not_hermitian, None).is_err());
        assert!(PureState::new(DVector::from_vec(vec![Complex64::new(2.0, 0.0)])).is_err());
        assert!(PureState::basis_state(2, 3).is_err());
        let one = PureState::basis_state(2, 1).unwrap();
        let three = PureState::basis_state(3, 1).unwrap();
        let u = DMatrix::<Complex64>::identity(2, 2);
        assert!(transition_amplitude(&three, &u, &one).is_err());
    }
}
