//! One test per headline criterion. Each prints a PASS/FAIL line with the measured values.

use std::io::Write;
use wormlab_core::acceptance::{self, CriterionOutcome};
use wormlab_core::Result;

fn check(f: fn() -> Result<CriterionOutcome>) {
    let outcome = f().expect("criterion evaluation failed");
    // libtest captures print macros and the std handles; a fresh file handle is not captured
    match std::fs::OpenOptions::new().write(true).open("/dev/stderr") {
        Ok(mut f) => {
            let _ = writeln!(f, "{outcome}");
        }
        Err(_) => eprintln!("{outcome}"),
    }
    assert!(outcome.passed, "{outcome}");
}

#[test]
fn criterion_01_operator_spread() {
    check(acceptance::criterion_1);
}

#[test]
fn criterion_02_syk_spread() {
    check(acceptance::criterion_2);
}

#[test]
fn criterion_03_floquet_spread() {
    check(acceptance::criterion_3);
}

#[test]
fn criterion_04_winding_window() {
    check(acceptance::criterion_4);
}

#[test]
fn criterion_05_revival_contrast() {
    check(acceptance::criterion_5);
}

#[test]
fn criterion_06_uniqueness() {
    check(acceptance::criterion_6);
}

#[test]
fn criterion_07_ensemble_fractions() {
    check(acceptance::criterion_7);
}

#[test]
fn criterion_08_teleportation_asymmetry() {
    check(acceptance::criterion_8);
}

#[test]
fn criterion_09_structural_invariants() {
    check(acceptance::criterion_9);
}

#[test]
fn criterion_10_thermalization_ordering() {
    check(acceptance::criterion_10);
}
