//! Brute-force density-matrix reference for the single-step protocol.
//!
//! Built from explicit Kronecker products of 2x2 matrices on a nine-qubit register:
//! fermion qubits, the reference qubit, and one auxiliary qubit that receives the
//! injected state, is traced out and reset, and then serves as the readout.

use super::{ProtocolConfig, ProtocolMode};
use crate::dynamics::C64;
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSpec;
use nalgebra::{DMatrix, DVector};

type M = DMatrix<C64>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn pauli(kind: char) -> M {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    match kind {
        'I' => M::from_row_slice(2, 2, &[o, z, z, o]),
        'X' => M::from_row_slice(2, 2, &[z, o, o, z]),
        'Y' => M::from_row_slice(2, 2, &[z, c(0.0, -1.0), c(0.0, 1.0), z]),
        'Z' => M::from_row_slice(2, 2, &[o, z, z, -o]),
        _ => unreachable!(),
    }
}

/// `ops[q]` on qubit `q`, little-endian.
fn on_qubits(ops: &[(usize, char)], n: usize) -> M {
    let mut m = M::identity(1, 1);
    for q in (0..n).rev() {
        let kind = ops.iter().find(|(k, _)| *k == q).map_or('I', |x| x.1);
        m = m.kronecker(&pauli(kind));
    }
    m
}

struct Oracle {
    n_fermions: usize,
    n_qubits: usize,
    left: Vec<M>,
    right: Vec<M>,
}

impl Oracle {
    fn new(n_fermions: usize, scale: f64) -> Self {
        let maj = |j: usize, last: char| {
            let mut ops: Vec<(usize, char)> = (0..j - 1).map(|q| (q, 'Z')).collect();
            ops.push((j - 1, last));
            on_qubits(&ops, n_fermions) * c(scale, 0.0)
        };
        Oracle {
            n_fermions,
            n_qubits: n_fermions + 2,
            left: (1..=n_fermions).map(|j| maj(j, 'X')).collect(),
            right: (1..=n_fermions).map(|j| maj(j, 'Y')).collect(),
        }
    }

    fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    fn fermion_dim(&self) -> usize {
        1 << self.n_fermions
    }

    fn hamiltonian(&self, spec: &HamiltonianSpec, side: &[M]) -> M {
        let d = self.fermion_dim();
        let mut h = M::zeros(d, d);
        for t in spec.terms() {
            let mut p = M::identity(d, d);
            for &i in &t.support {
                p *= &side[i - 1];
            }
            h += p * c(t.coefficient, 0.0);
        }
        h
    }

    fn function(h: &M, f: impl Fn(f64) -> C64) -> M {
        let eig = ((h + h.adjoint()) * c(0.5, 0.0)).symmetric_eigen();
        let d =
            DVector::from_iterator(eig.eigenvalues.len(), eig.eigenvalues.iter().map(|&e| f(e)));
        &eig.eigenvectors * M::from_diagonal(&d) * eig.eigenvectors.adjoint()
    }

    /// `(1/2)(1 + X_q chi_a + Y_q chi_b + Z_q Z_m)` with `chi = psi / scale`, `Z_m = -i chi_a chi_b`.
    fn swap(&self, q: usize, a: &M, b: &M, scale: f64) -> M {
        let chi_a = a / c(scale, 0.0);
        let chi_b = b / c(scale, 0.0);
        let z_m = &chi_a * &chi_b * c(0.0, -1.0);
        let local = q - self.n_fermions;
        let aux = |kind| on_qubits(&[(local, kind)], 2);
        (M::identity(self.dim(), self.dim())
            + aux('X').kronecker(&chi_a)
            + aux('Y').kronecker(&chi_b)
            + aux('Z').kronecker(&z_m))
            * c(0.5, 0.0)
    }

    /// `(1 ⊗ u) rho (1 ⊗ u)^dagger`, block by block.
    fn conj_lifted(&self, rho: &M, u: &M) -> M {
        let d = self.fermion_dim();
        let ud = u.adjoint();
        let mut out = M::zeros(self.dim(), self.dim());
        for bi in 0..4 {
            for bj in 0..4 {
                let block = rho.view((bi * d, bj * d), (d, d));
                out.view_mut((bi * d, bj * d), (d, d))
                    .copy_from(&(u * block * &ud));
            }
        }
        out
    }

    /// Traces out qubit `q` and puts it back in `|0>`.
    fn reset(&self, rho: &M, q: usize) -> M {
        let bit = 1usize << q;
        let mut out = M::zeros(self.dim(), self.dim());
        for r in 0..self.dim() {
            if r & bit != 0 {
                continue;
            }
            for col in 0..self.dim() {
                if col & bit != 0 {
                    continue;
                }
                out[(r, col)] = rho[(r, col)] + rho[(r | bit, col | bit)];
            }
        }
        out
    }
}

/// Reduced `(reference, readout)` density matrix of the protocol, reference as the low bit.
/// Only the single-step mode is supported.
pub fn oracle_reference_readout(config: &ProtocolConfig) -> Result<DMatrix<C64>> {
    config.validate()?;
    if config.mode != ProtocolMode::TrotterSingleStep {
        return Err(Error::InvalidConfig(
            "the oracle covers the single-step mode only".into(),
        ));
    }
    let n = config.n_fermions();
    let scale = config.normalization.generator_scale();
    let o = Oracle::new(n, scale);
    let reference = n;
    let aux = n + 1;

    let h_l = o.hamiltonian(&config.hamiltonian, &o.left);
    let h_r_raw = o.hamiltonian(&config.hamiltonian, &o.right);
    let tfd_h = o.hamiltonian(&config.tfd_hamiltonian, &o.left);
    let mut vac = DVector::<C64>::zeros(o.fermion_dim());
    vac[0] = c(1.0, 0.0);
    let sign = [1.0, -1.0]
        .into_iter()
        .find(|&s| ((&h_l - &h_r_raw * c(s, 0.0)) * &vac).norm() < 1e-10)
        .ok_or_else(|| Error::InvalidConfig("no TFD-compatible right sign".into()))?;
    let h_r = h_r_raw * c(sign, 0.0);

    let e_min = ((&tfd_h + tfd_h.adjoint()) * c(0.5, 0.0))
        .symmetric_eigenvalues()
        .min();
    let weight = Oracle::function(&tfd_h, |e| c((-config.beta / 2.0 * (e - e_min)).exp(), 0.0));
    let tfd = &weight * &vac;
    let tfd = &tfd / c(tfd.norm(), 0.0);
    let mut full = DVector::<C64>::zeros(o.dim());
    full.rows_mut(0, o.fermion_dim()).copy_from(&tfd);
    let tfd = full;
    // Bell pair on (reference, aux): |00> + |11>
    let flip = on_qubits(&[(reference, 'X'), (aux, 'X')], o.n_qubits);
    let psi = (&tfd + &flip * &tfd) * c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut rho = &psi * psi.adjoint();

    let conj = |rho: &M, u: &M| -> M { u * rho * u.adjoint() };
    let u0 = Oracle::function(&h_l, |e| c(0.0, -e * config.t0).exp());
    rho = o.conj_lifted(&rho, &u0.adjoint());
    let (a, b) = config.inject_pair;
    rho = conj(&rho, &o.swap(aux, &o.left[a - 1], &o.left[b - 1], scale));
    rho = o.reset(&rho, aux);
    rho = o.conj_lifted(&rho, &u0);

    let mut v = M::zeros(o.fermion_dim(), o.fermion_dim());
    for j in 0..n {
        v += &o.left[j] * &o.right[j] * c(0.0, config.norm.factor(n));
    }
    rho = o.conj_lifted(&rho, &Oracle::function(&v, |e| c(0.0, config.mu * e).exp()));
    rho = o.conj_lifted(
        &rho,
        &Oracle::function(&h_r, |e| c(0.0, -e * config.t1).exp()),
    );
    let (a, b) = config.readout_pair;
    rho = conj(&rho, &o.swap(aux, &o.right[a - 1], &o.right[b - 1], scale));
    Ok(crate::observables::partial_trace_keep(
        &rho,
        &[reference, aux],
    ))
}

/// `(1/2) sum |eig(a - b)|` for Hermitian `a`, `b`.
pub fn trace_distance(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    let d = a - b;
    let d = (&d + d.adjoint()) * c(0.5, 0.0);
    0.5 * d
        .symmetric_eigenvalues()
        .iter()
        .map(|x| x.abs())
        .sum::<f64>()
}
