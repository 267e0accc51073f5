use super::{build_dense, DenseOperator, Spectrum, StateVector, C64};
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSpec;
use crate::majorana::{Normalization, Register};
use nalgebra::DVector;

/// Inverse temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalConfig {
    beta: f64,
}

impl ThermalConfig {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta >= 0.0) {
            return Err(Error::NegativeBeta(beta));
        }
        Ok(ThermalConfig { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// `e^{-iHt} |state>`.
pub fn evolve(state: &StateVector, h: &DenseOperator, t: f64) -> Result<StateVector> {
    h.check_dim(state.dim())?;
    evolve_with(state, &h.eigen(), t)
}

/// Same as [`evolve`] with a precomputed eigendecomposition.
pub fn evolve_with(state: &StateVector, spectrum: &Spectrum, t: f64) -> Result<StateVector> {
    if spectrum.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: spectrum.dim(),
            found: state.dim(),
        });
    }
    StateVector::new(
        spectrum.evolve(state.amplitudes(), t),
        state.labels().to_vec(),
    )
}

/// `e^{iHt} op e^{-iHt}`.
pub fn heisenberg_evolve(op: &DenseOperator, h: &DenseOperator, t: f64) -> Result<DenseOperator> {
    op.check_dim(h.dim())?;
    Ok(h.eigen().heisenberg(op, t))
}

/// `normalize(e^{-beta H_L / 2} |I>)` on the two-sided register of `spec`'s fermions,
/// where `|I>` is the all-zero basis state.
pub fn tfd_prepare(
    spec: &HamiltonianSpec,
    beta: f64,
    normalization: Normalization,
) -> Result<StateVector> {
    let beta = ThermalConfig::new(beta)?.beta();
    let reg = Register::two_sided(spec.n_fermions(), normalization);
    let hl = build_dense(spec, &reg)?;
    tfd_from_spectrum(&hl.eigen(), beta, spec.n_fermions())
}

/// TFD from the spectrum of `H_L` on the two-sided register.
pub fn tfd_from_spectrum(spectrum: &Spectrum, beta: f64, n_fermions: usize) -> Result<StateVector> {
    let beta = ThermalConfig::new(beta)?.beta();
    let mut vac = DVector::<C64>::zeros(spectrum.dim());
    vac[0] = C64::new(1.0, 0.0);
    let (weight, _) = spectrum.boltzmann(beta / 2.0);
    let v = weight.apply(&vac)?;
    StateVector::new(v, StateVector::fermion_labels(n_fermions)).map(|s| s.normalized())
}

/// Which Hamiltonian runs in the first Floquet segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FloquetStart {
    #[default]
    H0First,
    H1First,
}

/// Piecewise-constant alternation between `H0` and `H1` in segments of equal length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloquetSchedule {
    segment_length: f64,
    pub start: FloquetStart,
}

impl FloquetSchedule {
    pub fn new(segment_length: f64, start: FloquetStart) -> Result<Self> {
        if !(segment_length > 0.0) || !segment_length.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "segment length must be positive, got {segment_length}"
            )));
        }
        Ok(FloquetSchedule {
            segment_length,
            start,
        })
    }

    pub fn segment_length(&self) -> f64 {
        self.segment_length
    }

    pub fn period(&self) -> f64 {
        2.0 * self.segment_length
    }

    /// `(uses_h1, duration)` for each segment up to time `t`, in time order.
    pub fn segments(&self, t: f64) -> Result<Vec<(bool, f64)>> {
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        let mut out = Vec::new();
        let mut elapsed = 0.0;
        let mut k = 0usize;
        // tolerate grid round-off at segment boundaries
        let eps = 1e-12 * self.segment_length.max(1.0);
        while t - elapsed > eps {
            let d = self.segment_length.min(t - elapsed);
            let first_is_h1 = self.start == FloquetStart::H1First;
            out.push((first_is_h1 ^ (k % 2 == 1), d));
            elapsed += self.segment_length;
            k += 1;
        }
        Ok(out)
    }
}

impl Default for FloquetSchedule {
    fn default() -> Self {
        FloquetSchedule {
            segment_length: 2.8,
            start: FloquetStart::H0First,
        }
    }
}

/// Floquet evolution with cached eigendecompositions of both Hamiltonians.
#[derive(Debug, Clone)]
pub struct FloquetPropagator {
    pub schedule: FloquetSchedule,
    h0: Spectrum,
    h1: Spectrum,
}

impl FloquetPropagator {
    pub fn new(schedule: FloquetSchedule, h0: &DenseOperator, h1: &DenseOperator) -> Result<Self> {
        h0.check_dim(h1.dim())?;
        Ok(FloquetPropagator {
            schedule,
            h0: h0.eigen(),
            h1: h1.eigen(),
        })
    }

    pub fn from_spectra(schedule: FloquetSchedule, h0: Spectrum, h1: Spectrum) -> Self {
        FloquetPropagator { schedule, h0, h1 }
    }

    pub fn dim(&self) -> usize {
        self.h0.dim()
    }

    /// Total propagator `U(t)`, later segments on the left.
    pub fn unitary(&self, t: f64) -> Result<DenseOperator> {
        let mut u = DenseOperator::identity(self.dim());
        for (uses_h1, d) in self.schedule.segments(t)? {
            let s = if uses_h1 { &self.h1 } else { &self.h0 };
            u = &s.propagator(d) * &u;
        }
        Ok(u)
    }

    pub fn evolve_vector(&self, v: &DVector<C64>, t: f64) -> Result<DVector<C64>> {
        let mut v = v.clone();
        for (uses_h1, d) in self.schedule.segments(t)? {
            let s = if uses_h1 { &self.h1 } else { &self.h0 };
            v = s.evolve(&v, d);
        }
        Ok(v)
    }

    pub fn evolve(&self, state: &StateVector, t: f64) -> Result<StateVector> {
        if state.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: state.dim(),
            });
        }
        StateVector::new(
            self.evolve_vector(state.amplitudes(), t)?,
            state.labels().to_vec(),
        )
    }

    /// `U(t)^dagger op U(t)`.
    pub fn heisenberg(&self, op: &DenseOperator, t: f64) -> Result<DenseOperator> {
        let u = self.unitary(t)?;
        Ok(&(&u.adjoint() * op) * &u)
    }
}

/// Piecewise evolution of `state` under the schedule up to time `t`.
pub fn floquet_evolve(
    state: &StateVector,
    schedule: &FloquetSchedule,
    h0: &DenseOperator,
    h1: &DenseOperator,
    t: f64,
) -> Result<StateVector> {
    FloquetPropagator::new(*schedule, h0, h1)?.evolve(state, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::build_single;
    use crate::hamiltonian::{learned_hamiltonian, perturbation};

    #[test]
    fn segments_split_with_remainder() {
        let s = FloquetSchedule::new(2.8, FloquetStart::H0First).unwrap();
        let seg = s.segments(7.0).unwrap();
        assert_eq!(seg.len(), 3);
        assert_eq!(
            seg.iter().map(|x| x.0).collect::<Vec<_>>(),
            vec![false, true, false]
        );
        assert!((seg[2].1 - 1.4).abs() < 1e-12);
        assert!(s.segments(-1.0).is_err());
        assert!(s.segments(0.0).unwrap().is_empty());
        assert_eq!(s.segments(5.6).unwrap().len(), 2);
    }

    #[test]
    fn floquet_two_segments_by_construction() {
        let h0 = build_single(&learned_hamiltonian(), Normalization::Half).unwrap();
        let h1 = build_single(&perturbation(), Normalization::Half).unwrap();
        let p = FloquetPropagator::new(FloquetSchedule::default(), &h0, &h1).unwrap();
        let expected = &h1.eigen().propagator(2.8) * &h0.eigen().propagator(2.8);
        assert!((&p.unitary(5.6).unwrap() - &expected).max_abs() < 1e-12);
        let single = h0.eigen().propagator(1.9);
        assert!((&p.unitary(1.9).unwrap() - &single).max_abs() < 1e-12);
    }

    #[test]
    fn negative_beta_rejected() {
        assert!(matches!(
            tfd_prepare(&learned_hamiltonian(), -1.0, Normalization::Half),
            Err(Error::NegativeBeta(_))
        ));
    }
}
