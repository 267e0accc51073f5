//! Exact small-scale simulation of Majorana-fermion Hamiltonians, size winding and
//! two-sided teleportation.
//!
//! All computations are dense: seven fermions fit on seven qubits for the doubled
//! system and on four qubits for a single copy.

// `!(x >= 0.0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod dynamics;
pub mod ensemble;
pub mod error;
pub mod hamiltonian;
pub mod majorana;
pub mod observables;
pub mod protocol;

pub use dynamics::{
    build_coupled, build_dense, build_single, evolve, floquet_evolve, heisenberg_evolve,
    tfd_prepare, DenseOperator, FloquetPropagator, FloquetSchedule, FloquetStart, QubitRole,
    Spectrum, StateVector, ThermalConfig, C64,
};
pub use error::{Error, Result};
pub use hamiltonian::{
    commuting_ensemble_sample, couple, enumerate_commuting_structures, is_mutually_commuting,
    learned_hamiltonian, perturbation, syk_sample, CoupledSpec, HamiltonianSpec, InteractionNorm,
    Term,
};
pub use majorana::{
    expand_in_monomials, jordan_wigner, monomial_product, monomials_commute, support_profile,
    Monomial, Normalization, OperatorExpansion, PauliString, Phase, Register, Side,
};
