//! Two-sided teleportation: insertion on the left, interaction pulse, readout on the right.
//!
//! Register layout: fermion qubits `0..n`, then reference, injection and readout qubits.

mod config;
mod oracle;
mod run;

pub use config::{asymmetry_score, ProtocolConfig, ProtocolMode, TeleportResult, TeleportSeries};
pub use oracle::{oracle_reference_readout, trace_distance};
pub use run::{teleport, teleport_sweep, ProtocolEngine};
