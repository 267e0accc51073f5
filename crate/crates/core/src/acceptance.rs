//! The ten headline checks, each reported as a pass/fail line with the measured numbers.

use crate::dynamics::{
    build_coupled, build_dense, DenseOperator, FloquetPropagator, FloquetSchedule,
};
use crate::ensemble::{ensemble_stats_all, verify_uniqueness, ComparisonPolicy};
use crate::error::Result;
use crate::hamiltonian::{
    couple, learned_hamiltonian, perturbation, syk_default_scale, syk_sample, HamiltonianSpec,
};
use crate::majorana::{expand_on_register, Normalization, Register, Side};
use crate::observables::{
    time_grid, two_point_via_tfd, System, TwoPointCalculator, WindingCalculator, WindingConfig,
};
use crate::protocol::{
    asymmetry_score, oracle_reference_readout, teleport_sweep, trace_distance, ProtocolConfig,
    ProtocolEngine, ProtocolMode,
};
use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

/// Time of the operator-spread checks.
pub const SPREAD_TIME: f64 = 2.8;
/// Seed and size of the ensemble run.
pub const ENSEMBLE_SEED: u64 = 0;
pub const ENSEMBLE_SAMPLES: usize = 1000;
/// Step of every time scan.
pub const SCAN_STEP: f64 = 0.05;
const REVIVAL_LEVEL: f64 = 0.8;
const HIGH_TEMPERATURE_BETA: f64 = 0.001;
const SUPPORT_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionOutcome {
    fn new(id: u8, name: &'static str, passed: bool, detail: String) -> Self {
        CriterionOutcome {
            id,
            name,
            passed,
            detail,
        }
    }
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{:>2}] {}: {}", self.id, self.name, self.detail)
    }
}

fn single_register() -> Register {
    Register::single_sided(7, Normalization::Half)
}

fn single_hamiltonian(spec: &HamiltonianSpec, reg: &Register) -> Result<DenseOperator> {
    build_dense(&spec.with_side(Side::Single), reg)
}

/// Normalised support of `op` over single-sided monomials.
fn support(op: &DenseOperator, reg: &Register) -> Result<BTreeSet<u32>> {
    let e = expand_on_register(op, reg, Side::Single, 0.0)?.normalized();
    Ok(e.support(SUPPORT_THRESHOLD).into_iter().collect())
}

fn max_size(s: &BTreeSet<u32>) -> usize {
    s.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
}

/// `(count, max size)` of `psi^1(t)` under `spec`.
pub fn spread_profile(spec: &HamiltonianSpec, t: f64) -> Result<(usize, usize)> {
    let reg = single_register();
    let h = single_hamiltonian(spec, &reg)?;
    let psi = reg.majorana(Side::Single, 1)?;
    let s = support(&h.eigen().heisenberg(&psi, t), &reg)?;
    Ok((s.len(), max_size(&s)))
}

pub fn criterion_1() -> Result<CriterionOutcome> {
    let (count, size) = spread_profile(&learned_hamiltonian(), SPREAD_TIME)?;
    Ok(CriterionOutcome::new(
        1,
        "operator spread",
        count == 8 && size == 5,
        format!("{count} monomials, max size {size} (want 8, 5)"),
    ))
}

pub fn criterion_2() -> Result<CriterionOutcome> {
    let j = syk_default_scale(7);
    let counts = (0..10u64)
        .map(|seed| Ok(spread_profile(&syk_sample(7, j, seed)?, SPREAD_TIME)?.0))
        .collect::<Result<Vec<usize>>>()?;
    let hits = counts.iter().filter(|&&c| c == 36).count();
    Ok(CriterionOutcome::new(
        2,
        "SYK spread",
        hits >= 9,
        format!("counts over seeds 0..10: {counts:?}; {hits}/10 equal 36 (want >= 9)"),
    ))
}

/// Union of the supports of `psi^1` over one Floquet period sampled every `step`.
pub fn floquet_union_support(step: f64) -> Result<usize> {
    let reg = single_register();
    let h0 = single_hamiltonian(&learned_hamiltonian(), &reg)?;
    let h1 = single_hamiltonian(&perturbation(), &reg)?;
    let schedule = FloquetSchedule::default();
    let prop = FloquetPropagator::new(schedule, &h0, &h1)?;
    let psi = reg.majorana(Side::Single, 1)?;
    let mut union = BTreeSet::new();
    for t in time_grid(step, schedule.period(), step)? {
        union.extend(support(&prop.heisenberg(&psi, t)?, &reg)?);
    }
    Ok(union.len())
}

pub fn criterion_3() -> Result<CriterionOutcome> {
    let n = floquet_union_support(SCAN_STEP)?;
    Ok(CriterionOutcome::new(
        3,
        "Floquet spread",
        n == 12,
        format!("union support over one period: {n} (want 12)"),
    ))
}

/// Best winding time of every fermion of the learned model, on `[0, 50]`.
pub fn learned_best_times(normalization: Normalization) -> Result<Vec<Option<f64>>> {
    let cfg = WindingConfig {
        normalization,
        ..WindingConfig::default()
    };
    let calc = WindingCalculator::new(&learned_hamiltonian(), cfg)?;
    let grid = time_grid(0.0, 50.0, SCAN_STEP)?;
    (1..=7).map(|j| calc.best_time(j, &grid)).collect()
}

fn fmt_time(t: Option<f64>) -> String {
    t.map_or("none".into(), |t| format!("{t:.2}"))
}

fn fmt_times(times: &[Option<f64>]) -> String {
    let parts: Vec<String> = times.iter().map(|&t| fmt_time(t)).collect();
    format!("[{}]", parts.join(", "))
}

fn window(times: &[Option<f64>]) -> Option<(f64, f64)> {
    let v: Option<Vec<f64>> = times.iter().copied().collect();
    let v = v?;
    Some((
        v.iter().copied().fold(f64::INFINITY, f64::min),
        v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    ))
}

pub fn criterion_4() -> Result<CriterionOutcome> {
    let half = learned_best_times(Normalization::Half)?;
    let unit = learned_best_times(Normalization::Unit)?;
    let in_window = half
        .iter()
        .all(|t| matches!(t, Some(t) if (2.0..=5.0).contains(t)));
    let near_four = [4, 7]
        .iter()
        .all(|&j| matches!(half[j - 1], Some(t) if (t - 4.0).abs() <= 0.3));
    let unit_window =
        window(&unit).map_or("undefined".into(), |(a, b)| format!("[{a:.2}, {b:.2}]"));
    Ok(CriterionOutcome::new(
        4,
        "winding-time window",
        in_window && near_four,
        format!(
            "best times {} (want all in [2, 5], fermions 4 and 7 in 4.0 +- 0.3); unit-square convention window {unit_window}",
            fmt_times(&half)
        ),
    ))
}

/// First time after the initial drop below `level` at which `series` exceeds it again.
pub fn first_revival(times: &[f64], series: &[f64], level: f64) -> Option<f64> {
    let drop = series.iter().position(|&g| g < level)?;
    (drop..series.len())
        .find(|&i| series[i] > level)
        .map(|i| times[i])
}

/// Earliest revival of any fermion of a single copy at high temperature.
pub fn single_sided_revival(
    spec: &HamiltonianSpec,
    normalization: Normalization,
    grid: &[f64],
) -> Result<Option<f64>> {
    let calc = TwoPointCalculator::new(System::Single(spec), HIGH_TEMPERATURE_BETA, normalization)?;
    let mut earliest: Option<f64> = None;
    for j in 1..=spec.n_fermions() {
        let g: Vec<f64> = calc.series(j, grid)?.iter().map(|z| z.re).collect();
        if let Some(t) = first_revival(grid, &g, REVIVAL_LEVEL) {
            earliest = Some(earliest.map_or(t, |e: f64| e.min(t)));
        }
    }
    Ok(earliest)
}

pub fn criterion_5() -> Result<CriterionOutcome> {
    let learned = learned_hamiltonian();
    let grid = time_grid(0.0, 50.0, SCAN_STEP)?;
    let earliest = single_sided_revival(&learned, Normalization::Half, &grid)?;
    let earliest_unit = single_sided_revival(&learned, Normalization::Unit, &grid)?;
    let coupled = couple(&learned, -12.0)?;
    let calc = TwoPointCalculator::new(
        System::Coupled(&coupled),
        HIGH_TEMPERATURE_BETA,
        Normalization::Half,
    )?;
    // largest Re G after each fermion's first drop below the level
    let mut coupled_max = f64::NEG_INFINITY;
    let mut coupled_revival: Option<f64> = None;
    for j in 1..=7 {
        let g: Vec<f64> = calc.series(j, &grid)?.iter().map(|z| z.re).collect();
        if let Some(drop) = g.iter().position(|&x| x < REVIVAL_LEVEL) {
            coupled_max = g[drop..].iter().copied().fold(coupled_max, f64::max);
        }
        if let Some(t) = first_revival(&grid, &g, REVIVAL_LEVEL).filter(|&t| t > 1.0) {
            coupled_revival = Some(coupled_revival.map_or(t, |e: f64| e.min(t)));
        }
    }
    let single_ok = earliest.is_some_and(|t| t <= 12.0);
    let coupled_ok = coupled_revival.is_none();
    Ok(CriterionOutcome::new(
        5,
        "revival contrast",
        single_ok && coupled_ok,
        format!(
            "single-sided first revival at t = {} (want <= 12); coupled max Re G after first decay on [0, 50] = {coupled_max:.3} (want <= 0.8); unit-square convention revival at t = {}",
            fmt_time(earliest),
            fmt_time(earliest_unit)
        ),
    ))
}

pub fn criterion_6() -> Result<CriterionOutcome> {
    let u = verify_uniqueness()?;
    Ok(CriterionOutcome::new(
        6,
        "uniqueness",
        u.is_unique_and_matching(),
        format!(
            "{} covering orbit(s), {} without the covering constraint, matches learned supports: {}",
            u.covering_orbits.len(),
            u.unconstrained_orbits,
            u.covering_orbits.first() == Some(&u.learned_form)
        ),
    ))
}

pub fn criterion_7() -> Result<CriterionOutcome> {
    let policies = [
        ComparisonPolicy::SortedDominance,
        ComparisonPolicy::Threshold(0.8),
        ComparisonPolicy::MeanBased,
    ];
    let reports = ensemble_stats_all(
        ENSEMBLE_SAMPLES,
        SPREAD_TIME,
        ENSEMBLE_SEED,
        &policies,
        crate::observables::DEFAULT_WINDING_BETA,
    )?;
    let main = &reports[0];
    let passed = (0.22..=0.36).contains(&main.fraction_best_two)
        && (0.01..=0.06).contains(&main.fraction_all);
    let variants: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{} {:.3}+-{:.3}/{:.3}+-{:.3}",
                r.policy.name(),
                r.fraction_best_two,
                r.stderr_best_two,
                r.fraction_all,
                r.stderr_all
            )
        })
        .collect();
    Ok(CriterionOutcome::new(
        7,
        "ensemble fractions",
        passed,
        format!(
            "n = {}, seed {}: best-two {:.3} (want [0.22, 0.36]), all {:.3} (want [0.01, 0.06]); policies {}",
            main.n_samples,
            main.seed,
            main.fraction_best_two,
            main.fraction_all,
            variants.join("; ")
        ),
    ))
}

/// Asymmetry of the three teleportation cases on a `t1` grid over `[0, 10]`.
pub fn asymmetry_cases() -> Result<Vec<(&'static str, f64)>> {
    let grid = time_grid(0.0, 10.0, 0.1)?;
    let base = ProtocolConfig::default();
    let cases = [
        ("(1,2) t0=2.8", base.clone()),
        (
            "(4,7) t0=4",
            ProtocolConfig {
                t0: 4.0,
                t1: 4.0,
                inject_pair: (4, 7),
                readout_pair: (4, 7),
                ..base.clone()
            },
        ),
        (
            "floquet t0=2.8",
            ProtocolConfig {
                mode: ProtocolMode::Floquet,
                ..base
            },
        ),
    ];
    cases
        .into_iter()
        .map(|(name, cfg)| Ok((name, asymmetry_score(&teleport_sweep(&cfg, &grid, true)?)?)))
        .collect()
}

pub fn criterion_8() -> Result<CriterionOutcome> {
    let scores = asymmetry_cases()?;
    let parts: Vec<String> = scores.iter().map(|(n, s)| format!("{n}: {s:.3}")).collect();
    Ok(CriterionOutcome::new(
        8,
        "teleportation asymmetry",
        scores.iter().all(|(_, s)| *s > 0.0),
        format!("{} (want all > 0)", parts.join(", ")),
    ))
}

/// Largest violations of the structural invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub size_sum_error: f64,
    pub phase_excess: f64,
    pub even_weight: f64,
    pub hermiticity_error: f64,
    pub unitarity_error: f64,
    pub two_point_gap: f64,
    pub oracle_distance: f64,
    pub seconds: f64,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.size_sum_error <= 1e-10
            && self.phase_excess <= 0.0
            && self.even_weight <= 1e-10
            && self.hermiticity_error <= 1e-12
            && self.unitarity_error <= 1e-12
            && self.two_point_gap <= 1e-10
            && self.oracle_distance <= 1e-10
            && self.seconds < 60.0
    }
}

pub fn invariant_suite() -> Result<InvariantReport> {
    let start = Instant::now();
    let learned = learned_hamiltonian();
    let calc = WindingCalculator::new(&learned, WindingConfig::default())?;
    let (mut size_sum_error, mut phase_excess, mut even_weight) =
        (0.0f64, f64::NEG_INFINITY, 0.0f64);
    for j in 1..=7 {
        for t in time_grid(0.0, 10.0, 0.5)? {
            let d = calc.data(j, t)?;
            size_sum_error = size_sum_error.max((d.p.iter().sum::<f64>() - 1.0).abs());
            for (l, (p, q)) in d.p.iter().zip(&d.q).enumerate() {
                phase_excess = phase_excess.max(q.norm() - p - 1e-12);
                if l % 2 == 0 {
                    even_weight = even_weight.max(*p);
                }
            }
        }
    }

    let reg = single_register();
    let two = Register::two_sided(7, Normalization::Half);
    let h_single = single_hamiltonian(&learned, &reg)?;
    let h_coupled = build_coupled(&couple(&learned, -12.0)?, &two)?;
    let h_floquet = single_hamiltonian(&perturbation(), &reg)?;
    let hermiticity_error = h_single
        .hermiticity_error()
        .max(h_coupled.hermiticity_error());
    let floquet = FloquetPropagator::new(FloquetSchedule::default(), &h_single, &h_floquet)?;
    let unitarity_error = h_single
        .eigen()
        .propagator(SPREAD_TIME)
        .unitarity_error()
        .max(h_coupled.eigen().propagator(SPREAD_TIME).unitarity_error())
        .max(floquet.unitary(7.3)?.unitarity_error());

    let tp = TwoPointCalculator::new(System::Single(&learned), 4.0, Normalization::Half)?;
    let mut two_point_gap = 0.0f64;
    for j in [1, 4, 7] {
        for t in [0.0, 1.3, 2.8, 9.7] {
            let a = tp.at(j, t)?;
            let b = two_point_via_tfd(&learned, 4.0, j, t, Normalization::Half)?;
            two_point_gap = two_point_gap.max((a - b).norm());
        }
    }

    let cfg = ProtocolConfig::default().with_mu(0.0);
    let engine = ProtocolEngine::new(&cfg)?;
    let state = engine.final_state(0.0, cfg.t1)?;
    let oracle_distance = trace_distance(
        &engine.reference_readout_state(&state)?,
        &oracle_reference_readout(&cfg)?,
    );
    Ok(InvariantReport {
        size_sum_error,
        phase_excess: phase_excess.max(0.0),
        even_weight,
        hermiticity_error,
        unitarity_error,
        two_point_gap,
        oracle_distance,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn criterion_9() -> Result<CriterionOutcome> {
    let r = invariant_suite()?;
    Ok(CriterionOutcome::new(
        9,
        "structural invariants",
        r.passed(),
        format!(
            "sum p err {:.1e}, |q|-p excess {:.1e}, even p {:.1e}, hermiticity {:.1e}, unitarity {:.1e}, two-point gap {:.1e}, oracle distance {:.1e}, {:.1} s",
            r.size_sum_error,
            r.phase_excess,
            r.even_weight,
            r.hermiticity_error,
            r.unitarity_error,
            r.two_point_gap,
            r.oracle_distance,
            r.seconds
        ),
    ))
}

/// Fermions ranked by a key, largest first; ties keep index order.
fn ranked(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (1..=values.len()).collect();
    idx.sort_by(|&a, &b| values[b - 1].total_cmp(&values[a - 1]));
    idx
}

pub fn criterion_10() -> Result<CriterionOutcome> {
    let learned = learned_hamiltonian();
    let coupled = couple(&learned, -12.0)?;
    let calc = TwoPointCalculator::new(
        System::Coupled(&coupled),
        HIGH_TEMPERATURE_BETA,
        Normalization::Half,
    )?;
    let g = (1..=7)
        .map(|j| calc.at(j, SPREAD_TIME).map(|z| z.re))
        .collect::<Result<Vec<f64>>>()?;
    let times = learned_best_times(Normalization::Half)?;
    let t: Vec<f64> = times
        .iter()
        .map(|t| t.unwrap_or(f64::NEG_INFINITY))
        .collect();
    let target = |values: &[f64]| {
        // strict separation: both targets above every other fermion
        let lo = values[3].min(values[6]);
        (1..=7)
            .filter(|j| *j != 4 && *j != 7)
            .all(|j| values[j - 1] < lo)
    };
    let g_rank = ranked(&g);
    let t_rank = ranked(&t);
    Ok(CriterionOutcome::new(
        10,
        "thermalization ordering",
        target(&g) && target(&t),
        format!(
            "Re G(2.8) ranking {:?}, best-time ranking {:?} with times {} (want 4 and 7 strictly first in both)",
            g_rank,
            t_rank,
            fmt_times(&times)
        ),
    ))
}

/// Every criterion in order.
pub fn run_all() -> Result<Vec<CriterionOutcome>> {
    let checks: [fn() -> Result<CriterionOutcome>; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    checks.iter().map(|c| c()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn revival_detection() {
        let t = [0.0, 1.0, 2.0, 3.0, 4.0];
        assert_eq!(
            first_revival(&t, &[1.0, 0.5, 0.7, 0.9, 0.2], 0.8),
            Some(3.0)
        );
        assert_eq!(first_revival(&t, &[1.0, 0.5, 0.7, 0.6, 0.2], 0.8), None);
        assert_eq!(first_revival(&t, &[1.0, 0.9, 0.9, 0.9, 0.9], 0.8), None);
    }

    #[test]
    fn ranking_is_descending() {
        assert_eq!(ranked(&[0.1, 0.5, 0.3]), vec![2, 3, 1]);
    }

    #[test]
    fn outcome_line() {
        let o = CriterionOutcome::new(3, "x", false, "y".into());
        assert_eq!(o.to_string(), "FAIL [ 3] x: y");
    }
}
