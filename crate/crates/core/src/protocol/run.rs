use super::{ProtocolConfig, ProtocolMode, TeleportResult, TeleportSeries};
use crate::dynamics::{
    build_coupled, build_dense, interaction_pauli_sum, tfd_from_spectrum, DenseOperator,
    FloquetPropagator, QubitRole, Spectrum, StateVector, C64,
};
use crate::error::{Error, Result};
use crate::hamiltonian::{couple_with, HamiltonianSpec};
use crate::majorana::{PauliString, PauliSum, Phase, Register, Side};
use crate::observables::{check_grid, mutual_information};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

/// Qubit roles after the fermion qubits.
const REFERENCE: usize = 0;
const INJECTION: usize = 1;
const READOUT: usize = 2;

enum Evolution {
    Plain(Spectrum),
    Floquet(FloquetPropagator),
}

impl Evolution {
    fn unitary(&self, t: f64) -> Result<DenseOperator> {
        match self {
            Evolution::Plain(s) => Ok(s.propagator(t)),
            Evolution::Floquet(f) => f.unitary(t),
        }
    }
}

/// Precomputed operators for repeated runs sharing one configuration.
pub struct ProtocolEngine {
    config: ProtocolConfig,
    fermion_register: Register,
    full_register: Register,
    left: Evolution,
    right: Evolution,
    tfd_spectrum: Spectrum,
    /// Diagonal of `V` on the full register.
    pulse_diagonal: Vec<f64>,
}

impl ProtocolEngine {
    pub fn new(config: &ProtocolConfig) -> Result<Self> {
        config.validate()?;
        let n = config.n_fermions();
        let fermion_register = Register::two_sided(n, config.normalization);
        let full_register = fermion_register.with_auxiliary(3);
        let sides = |h: &HamiltonianSpec| -> Result<(DenseOperator, DenseOperator)> {
            let c = couple_with(h, 0.0, config.norm)?;
            Ok((
                build_dense(&c.left, &fermion_register)?,
                build_dense(&c.right, &fermion_register)?,
            ))
        };
        let (h_l, h_r) = sides(&config.hamiltonian)?;
        let (left, right) = match config.mode {
            ProtocolMode::Floquet => {
                let (p_l, p_r) = sides(&config.floquet_perturbation)?;
                (
                    Evolution::Floquet(FloquetPropagator::new(config.floquet, &h_l, &p_l)?),
                    Evolution::Floquet(FloquetPropagator::new(config.floquet, &h_r, &p_r)?),
                )
            }
            _ => (Evolution::Plain(h_l.eigen()), Evolution::Plain(h_r.eigen())),
        };
        let tfd_spectrum = build_dense(
            &config.tfd_hamiltonian.with_side(Side::Left),
            &fermion_register,
        )?
        .eigen();
        let v = interaction_pauli_sum(&full_register, config.norm)?;
        let dim = full_register.dim();
        let pulse_diagonal = (0..dim)
            .map(|b| {
                v.terms
                    .iter()
                    .map(|(c, p)| {
                        debug_assert_eq!(p.x_mask, 0);
                        (c * p.action(b)).re
                    })
                    .sum()
            })
            .collect();
        Ok(ProtocolEngine {
            config: config.clone(),
            fermion_register,
            full_register,
            left,
            right,
            tfd_spectrum,
            pulse_diagonal,
        })
    }

    pub fn config(&self) -> &ProtocolConfig {
        &self.config
    }

    fn aux_qubit(&self, role: usize) -> usize {
        self.fermion_register.n_qubits + role
    }

    /// `SWAP` between qubit `q` and the two-Majorana qubit of `pair` on `side`.
    fn swap_into(&self, q: usize, pair: (usize, usize), side: Side) -> Result<PauliSum> {
        let reg = &self.full_register;
        let n = reg.n_qubits;
        let chi_a = reg.majorana_pauli(side, pair.0)?;
        let chi_b = reg.majorana_pauli(side, pair.1)?;
        let ab = chi_a.product(&chi_b);
        let z_m = ab.with_phase(ab.phase * Phase::MINUS_I);
        let half = C64::new(0.5, 0.0);
        let mut sum = PauliSum::default();
        sum.push(half, PauliString::identity(n));
        sum.push(half, PauliString::single('X', q, n).product(&chi_a));
        sum.push(half, PauliString::single('Y', q, n).product(&chi_b));
        sum.push(half, PauliString::single('Z', q, n).product(&z_m));
        Ok(sum)
    }

    /// State after TFD preparation, Bell pair, backward evolution, injection and
    /// forward evolution.
    pub fn inserted_state(&self) -> Result<StateVector> {
        let c = &self.config;
        let tfd = tfd_from_spectrum(&self.tfd_spectrum, c.beta, c.n_fermions())?;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let zero = C64::new(0.0, 0.0);
        let bell = StateVector::new(
            DVector::from_vec(vec![C64::new(s, 0.0), zero, zero, C64::new(s, 0.0)]),
            vec![QubitRole::Reference, QubitRole::Injection],
        )?;
        let readout = StateVector::basis(0, vec![QubitRole::Readout])?;
        let state = tfd.tensor(&bell).tensor(&readout);
        let u0 = self.left.unitary(c.t0)?;
        let state = state.apply_low(u0.adjoint().matrix())?;
        let swap = self.swap_into(self.aux_qubit(INJECTION), c.inject_pair, Side::Left)?;
        let state = state.apply_pauli_sum(&swap);
        state.apply_low(u0.matrix())
    }

    /// Applies the interaction for sign `mu` to an inserted state.
    pub fn pulse(&self, state: &StateVector, mu: f64) -> Result<StateVector> {
        match self.config.mode {
            ProtocolMode::ExactCoupled { window } => {
                let c = &self.config;
                let coupled = couple_with(&c.hamiltonian, -mu / window, c.norm)?;
                let h = build_coupled(&coupled, &self.fermion_register)?;
                state.apply_low(h.eigen().propagator(window).matrix())
            }
            _ => {
                let diag: Vec<C64> = self
                    .pulse_diagonal
                    .iter()
                    .map(|&v| C64::new(0.0, mu * v).exp())
                    .collect();
                state.apply_diagonal(&diag)
            }
        }
    }

    /// Right evolution by `t1`, swap-out into the readout qubit.
    pub fn readout(&self, pulsed: &StateVector, t1: f64) -> Result<StateVector> {
        let u1 = self.right.unitary(t1)?;
        let state = pulsed.apply_low(u1.matrix())?;
        let swap = self.swap_into(
            self.aux_qubit(READOUT),
            self.config.readout_pair,
            Side::Right,
        )?;
        Ok(state.apply_pauli_sum(&swap))
    }

    pub fn final_state(&self, mu: f64, t1: f64) -> Result<StateVector> {
        let s = self.inserted_state()?;
        self.readout(&self.pulse(&s, mu)?, t1)
    }

    /// `I(reference; readout)` in bits.
    pub fn mutual_info(&self, state: &StateVector) -> Result<f64> {
        mutual_information(
            state,
            &[self.aux_qubit(REFERENCE)],
            &[self.aux_qubit(READOUT)],
        )
    }

    /// Reduced state on `(reference, readout)`, reference as the low bit.
    pub fn reference_readout_state(&self, state: &StateVector) -> Result<DMatrix<C64>> {
        state.reduced_density_matrix(&[self.aux_qubit(REFERENCE), self.aux_qubit(READOUT)])
    }

    pub fn sweep(&self, grid: &[f64], mus: &[f64]) -> Result<Vec<(f64, Vec<f64>)>> {
        check_grid(grid)?;
        let inserted = self.inserted_state()?;
        mus.iter()
            .map(|&mu| {
                let pulsed = self.pulse(&inserted, mu)?;
                let values = grid
                    .par_iter()
                    .map(|&t1| self.mutual_info(&self.readout(&pulsed, t1)?))
                    .collect::<Result<Vec<f64>>>()?;
                Ok((mu, values))
            })
            .collect()
    }
}

/// Runs the full protocol once.
pub fn teleport(config: &ProtocolConfig) -> Result<TeleportResult> {
    let engine = ProtocolEngine::new(config)?;
    let state = engine.final_state(config.mu, config.t1)?;
    Ok(TeleportResult {
        mutual_info: engine.mutual_info(&state)?,
        config: config.clone(),
    })
}

/// `I(t1)` over `grid` for `mu` and, if `both_signs`, for `-mu`.
pub fn teleport_sweep(
    config: &ProtocolConfig,
    grid: &[f64],
    both_signs: bool,
) -> Result<TeleportSeries> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let engine = ProtocolEngine::new(config)?;
    let mut mus = vec![config.mu];
    if both_signs {
        mus.push(-config.mu);
    }
    Ok(TeleportSeries {
        config: config.clone(),
        t1: grid.to_vec(),
        branches: engine.sweep(grid, &mus)?,
    })
}
