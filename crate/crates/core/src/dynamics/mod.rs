//! Dense matrices, states and exact time evolution.

mod build;
mod dense;
mod evolution;
mod state;

pub use build::{
    build_coupled, build_dense, build_single, interaction_operator, interaction_pauli_sum,
};
pub use dense::{DenseOperator, Spectrum, C64};
pub use evolution::{
    evolve, evolve_with, floquet_evolve, heisenberg_evolve, tfd_from_spectrum, tfd_prepare,
    FloquetPropagator, FloquetSchedule, FloquetStart, ThermalConfig,
};
pub use state::{QubitRole, StateVector};
