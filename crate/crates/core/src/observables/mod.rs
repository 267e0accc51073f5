//! Correlators, size winding and entropies.

mod correlators;
mod csv;
mod entropy;
mod winding;

pub use correlators::{
    floquet_two_point_series, otoc, otoc_with, two_point, two_point_via_tfd, two_point_with,
    System, TwoPointCalculator,
};
pub use csv::{write_scan, ScanRow, SCAN_HEADER};
pub use entropy::{
    entanglement_entropy, mutual_information, mutual_information_dm, partial_trace_keep,
    von_neumann_entropy,
};
pub use winding::{
    best_winding_time, first_local_minimum, size_distributions, time_grid, winding_quality,
    wrap_phase, SizeWindingData, WindingCalculator, WindingConfig, WindingQuality,
    DEFAULT_QUALITY_THRESHOLD, DEFAULT_WEIGHT_FLOOR, DEFAULT_WINDING_BETA,
};

pub(crate) use winding::check_grid;
