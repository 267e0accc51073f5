//! Four-body Majorana Hamiltonians: built-in models, samplers and structure enumeration.

mod enumerate;
mod spec;
mod text;
mod zoo;

pub use enumerate::{
    canonical_structure, enumerate_commuting_report, enumerate_commuting_structures,
    EnumerationReport, Structure,
};
pub use spec::{is_mutually_commuting, CoupledSpec, HamiltonianSpec, InteractionNorm, Term};
pub use text::{coupled_from_text, coupled_to_text, spec_from_text, spec_to_text};
pub use zoo::{
    commuting_ensemble_sample, commuting_ensemble_sample_with, couple, couple_with, four_subsets,
    learned_hamiltonian, perturbation, syk_default_scale, syk_sample, tfd_right_sign,
    EnsembleOptions, ENSEMBLE_SUPPORTS,
};

pub(crate) use zoo::spec_pauli_sum;
