use crate::dynamics::{
    build_coupled, build_dense, DenseOperator, FloquetPropagator, FloquetSchedule, Spectrum,
    StateVector, C64,
};
use crate::error::{Error, Result};
use crate::hamiltonian::{CoupledSpec, HamiltonianSpec};
use crate::majorana::{Normalization, Register, Side};
use nalgebra::DMatrix;

/// A single copy of the system or the coupled doubled system.
#[derive(Debug, Clone, Copy)]
pub enum System<'a> {
    Single(&'a HamiltonianSpec),
    Coupled(&'a CoupledSpec),
}

impl System<'_> {
    pub fn n_fermions(&self) -> usize {
        match self {
            System::Single(s) => s.n_fermions(),
            System::Coupled(c) => c.n_fermions(),
        }
    }

    /// Register and Hamiltonian matrix; the observed fermions sit on `Side::Left`
    /// (read as the only side for a single copy).
    pub fn build(&self, normalization: Normalization) -> Result<(Register, DenseOperator)> {
        match self {
            System::Single(s) => {
                let reg = Register::single_sided(s.n_fermions(), normalization);
                let h = build_dense(&s.with_side(Side::Single), &reg)?;
                Ok((reg, h))
            }
            System::Coupled(c) => {
                let reg = Register::two_sided(c.n_fermions(), normalization);
                Ok((reg, build_coupled(c, &reg)?))
            }
        }
    }
}

/// Cached thermal eigenbasis for repeated two-point evaluations.
#[derive(Debug, Clone)]
pub struct TwoPointCalculator {
    register: Register,
    spectrum: Spectrum,
    weights: Vec<f64>,
}

impl TwoPointCalculator {
    pub fn new(system: System<'_>, beta: f64, normalization: Normalization) -> Result<Self> {
        if !(beta >= 0.0) {
            return Err(Error::NegativeBeta(beta));
        }
        let (register, h) = system.build(normalization)?;
        let spectrum = h.eigen();
        let e0 = spectrum.ground_energy();
        let raw: Vec<f64> = spectrum
            .energies
            .iter()
            .map(|e| (-beta * (e - e0)).exp())
            .collect();
        let z: f64 = raw.iter().sum();
        let weights = raw.into_iter().map(|w| w / z).collect();
        Ok(TwoPointCalculator {
            register,
            spectrum,
            weights,
        })
    }

    fn matrix_elements(&self, j: usize) -> Result<DMatrix<f64>> {
        let psi = self.register.majorana(Side::Left, j)?;
        Ok(self.spectrum.to_eigenbasis(&psi).map(|z| z.norm_sqr()))
    }

    /// `G_j(t)` at each time in `times`.
    pub fn series(&self, j: usize, times: &[f64]) -> Result<Vec<C64>> {
        let a2 = self.matrix_elements(j)?;
        let e = &self.spectrum.energies;
        let norm = 1.0 / self.register.normalization.square();
        Ok(times
            .iter()
            .map(|&t| {
                let phases: Vec<C64> = e.iter().map(|&x| C64::new(0.0, x * t).exp()).collect();
                let mut acc = C64::new(0.0, 0.0);
                for a in 0..e.len() {
                    if self.weights[a] == 0.0 {
                        continue;
                    }
                    let mut row = C64::new(0.0, 0.0);
                    for b in 0..e.len() {
                        row += phases[b].conj() * a2[(a, b)];
                    }
                    acc += phases[a] * row * self.weights[a];
                }
                acc * norm
            })
            .collect())
    }

    pub fn at(&self, j: usize, t: f64) -> Result<C64> {
        Ok(self.series(j, &[t])?[0])
    }
}

/// `G_j(t) = Tr[rho psi^j(t) psi^j] / psi^2`, so that `G_j(0) = 1`.
pub fn two_point(system: System<'_>, beta: f64, j: usize, t: f64) -> Result<C64> {
    two_point_with(system, beta, j, t, Normalization::Half)
}

pub fn two_point_with(
    system: System<'_>,
    beta: f64,
    j: usize,
    t: f64,
    normalization: Normalization,
) -> Result<C64> {
    TwoPointCalculator::new(system, beta, normalization)?.at(j, t)
}

/// Same quantity as [`two_point`] for a single copy, computed as a TFD expectation value
/// `<TFD| psi_L^j(t) psi_L^j |TFD> / psi^2` on the doubled register.
pub fn two_point_via_tfd(
    spec: &HamiltonianSpec,
    beta: f64,
    j: usize,
    t: f64,
    normalization: Normalization,
) -> Result<C64> {
    let reg = Register::two_sided(spec.n_fermions(), normalization);
    let hl = build_dense(&spec.with_side(Side::Left), &reg)?;
    let s = hl.eigen();
    let tfd = crate::dynamics::tfd_from_spectrum(&s, beta, spec.n_fermions())?;
    let psi = reg.majorana(Side::Left, j)?;
    // psi(t) psi |TFD> = U^dagger psi U psi |TFD>
    let v = psi.apply(tfd.amplitudes())?;
    let v = s.evolve(&v, t);
    let v = psi.apply(&v)?;
    let v = s.evolve(&v, -t);
    let bra = StateVector::new(v, tfd.labels().to_vec())?;
    Ok(tfd.inner(&bra) / normalization.square())
}

/// Single-copy `G_j(t)` when the evolution alternates between `h0` and `h1`; the thermal
/// state is that of `h0`.
pub fn floquet_two_point_series(
    h0: &HamiltonianSpec,
    h1: &HamiltonianSpec,
    schedule: FloquetSchedule,
    beta: f64,
    j: usize,
    times: &[f64],
    normalization: Normalization,
) -> Result<Vec<C64>> {
    if !(beta >= 0.0) {
        return Err(Error::NegativeBeta(beta));
    }
    let reg = Register::single_sided(h0.n_fermions(), normalization);
    let d0 = build_dense(&h0.with_side(Side::Single), &reg)?;
    let d1 = build_dense(&h1.with_side(Side::Single), &reg)?;
    let prop = FloquetPropagator::new(schedule, &d0, &d1)?;
    let (w, _) = d0.eigen().boltzmann(beta);
    let rho = w.scale_real(1.0 / w.trace().re);
    let psi = reg.majorana(Side::Single, j)?;
    let rho_psi = &psi * &rho;
    times
        .iter()
        .map(|&t| {
            // Tr[rho psi(t) psi] = Tr[psi rho psi(t)]
            let g = (&rho_psi * &prop.heisenberg(&psi, t)?).trace();
            Ok(g / normalization.square())
        })
        .collect()
}

/// Regularised out-of-time-order correlator
/// `Tr[y psi^i(t) y psi^j y psi^i(t) y psi^j]`, `y = rho^{1/4}`, divided by its `t = 0` value.
pub fn otoc(spec: &HamiltonianSpec, beta: f64, i: usize, j: usize, t: f64) -> Result<f64> {
    otoc_with(spec, beta, i, j, t, Normalization::Half)
}

pub fn otoc_with(
    spec: &HamiltonianSpec,
    beta: f64,
    i: usize,
    j: usize,
    t: f64,
    normalization: Normalization,
) -> Result<f64> {
    if i == j {
        return Err(Error::InvalidConfig(format!(
            "OTOC needs distinct fermions, got {i} twice"
        )));
    }
    if !(beta >= 0.0) {
        return Err(Error::NegativeBeta(beta));
    }
    let reg = Register::single_sided(spec.n_fermions(), normalization);
    let s = build_dense(&spec.with_side(Side::Single), &reg)?.eigen();
    let (y, _) = s.boltzmann(beta / 4.0);
    let psi_i = reg.majorana(Side::Single, i)?;
    let psi_j = reg.majorana(Side::Single, j)?;
    let raw = |op_i: &DenseOperator| -> C64 {
        let a = &y * op_i;
        let b = &y * &psi_j;
        let ab = &a * &b;
        (&ab * &ab).trace()
    };
    let f0 = raw(&psi_i);
    let ft = raw(&s.heisenberg(&psi_i, t));
    Ok((ft / f0).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::learned_hamiltonian;

    #[test]
    fn two_point_starts_at_one() {
        let h = learned_hamiltonian();
        for norm in [Normalization::Half, Normalization::Unit] {
            let g = two_point_with(System::Single(&h), 0.5, 3, 0.0, norm).unwrap();
            assert!((g - C64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn otoc_trivial_cases() {
        let h = learned_hamiltonian();
        assert!((otoc(&h, 0.0, 1, 2, 0.0).unwrap() - 1.0).abs() < 1e-10);
        let zero = HamiltonianSpec::empty(7, Side::Single);
        assert!((otoc(&zero, 0.0, 1, 2, 3.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(otoc(&h, 0.0, 2, 2, 1.0).is_err());
    }

    #[test]
    fn floquet_series_without_perturbation_is_plain() {
        let h = learned_hamiltonian();
        let zero = HamiltonianSpec::empty(7, Side::Single);
        let times = [0.0, 1.0, 2.5];
        let f = floquet_two_point_series(
            &h,
            &zero,
            FloquetSchedule::default(),
            1.0,
            2,
            &times,
            Normalization::Half,
        )
        .unwrap();
        let g = TwoPointCalculator::new(System::Single(&h), 1.0, Normalization::Half)
            .unwrap()
            .series(2, &times)
            .unwrap();
        for (a, b) in f.iter().zip(&g) {
            assert!((a - b).norm() < 1e-10);
        }
    }
}
