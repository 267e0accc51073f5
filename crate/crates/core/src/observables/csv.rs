use crate::dynamics::C64;
use std::io::{self, Write};

/// Header comment naming the columns of a scan file.
pub const SCAN_HEADER: &str = "# quantity,fermion,time,real,imag";

/// One scan sample.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub quantity: String,
    pub fermion: usize,
    pub time: f64,
    pub value: C64,
}

impl ScanRow {
    pub fn new(quantity: &str, fermion: usize, time: f64, value: C64) -> Self {
        ScanRow {
            quantity: quantity.to_string(),
            fermion,
            time,
            value,
        }
    }

    pub fn real(quantity: &str, fermion: usize, time: f64, value: f64) -> Self {
        Self::new(quantity, fermion, time, C64::new(value, 0.0))
    }
}

pub fn write_scan(out: &mut impl Write, rows: &[ScanRow]) -> io::Result<()> {
    writeln!(out, "{SCAN_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.quantity, r.fermion, r.time, r.value.re, r.value.im
        )?;
    }
    Ok(())
}
