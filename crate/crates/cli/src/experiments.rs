use crate::args::{Experiment, Overrides};
use crate::output::Output;
use std::io::Write;
use std::path::Path;
use thiserror::Error;
use wormlab_core::acceptance;
use wormlab_core::ensemble::{ensemble_stats_all, ComparisonPolicy};
use wormlab_core::hamiltonian::{enumerate_commuting_report, syk_default_scale, Structure};
use wormlab_core::observables::{
    floquet_two_point_series, time_grid, write_scan, ScanRow, SizeWindingData, System,
    TwoPointCalculator, WindingCalculator, WindingConfig, DEFAULT_QUALITY_THRESHOLD,
    DEFAULT_WINDING_BETA,
};
use wormlab_core::protocol::{teleport_sweep, ProtocolConfig, ProtocolMode, TeleportSeries};
use wormlab_core::{
    couple, learned_hamiltonian, perturbation, syk_sample, FloquetSchedule, HamiltonianSpec,
    Normalization,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] wormlab_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{failed} of {total} acceptance criteria failed")]
    AcceptanceFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use wormlab_core::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Core(
                E::NegativeBeta(_)
                | E::NegativeTime(_)
                | E::EmptyGrid
                | E::InvalidConfig(_)
                | E::InvalidQubitSet
                | E::IndexOutOfRange { .. }
                | E::BudgetExceeded { .. }
                | E::Parse { .. },
            ) => 2,
            CliError::AcceptanceFailed { .. } => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Two-point functions are taken at this inverse temperature unless it is the main one.
const TWO_POINT_BETA: f64 = 0.001;
const TELEPORT_TIME: f64 = 2.8;
const DEFAULT_MU: f64 = -12.0;
const LONG_GRID: (f64, f64, f64) = (0.0, 50.0, 0.05);
const SHORT_GRID: (f64, f64, f64) = (0.0, 10.0, 0.1);

/// Overrides merged with one experiment's defaults.
struct Params {
    o: Overrides,
}

impl Params {
    fn beta(&self, default: f64) -> CliResult<f64> {
        let b = self.o.beta.unwrap_or(default);
        if !(b >= 0.0) {
            return Err(CliError::Config(format!(
                "beta must be non-negative, got {b}"
            )));
        }
        Ok(b)
    }

    fn mu(&self) -> f64 {
        self.o.mu.unwrap_or(DEFAULT_MU)
    }

    fn seed(&self) -> u64 {
        self.o.seed.unwrap_or(0)
    }

    fn threshold(&self) -> f64 {
        self.o.threshold.unwrap_or(DEFAULT_QUALITY_THRESHOLD)
    }

    fn grid(&self, default: (f64, f64, f64)) -> CliResult<(Vec<f64>, (f64, f64, f64))> {
        let g = (
            self.o.grid_start.unwrap_or(default.0),
            self.o.grid_stop.unwrap_or(default.1),
            self.o.grid_step.unwrap_or(default.2),
        );
        if !(g.2 > 0.0) || !(g.1 >= g.0) || g.0 < 0.0 {
            return Err(CliError::Config(format!(
                "grid start {} stop {} step {} is not a non-negative increasing grid",
                g.0, g.1, g.2
            )));
        }
        Ok((time_grid(g.0, g.1, g.2)?, g))
    }
}

fn record_grid(out: &mut Output, key: &str, g: (f64, f64, f64), len: usize) {
    out.record(&format!("{key}_start"), g.0);
    out.record(&format!("{key}_stop"), g.1);
    out.record(&format!("{key}_step"), g.2);
    out.record(&format!("{key}_points"), len);
}

/// Runs `experiment` and writes its artifacts into `dir`.
pub fn run(experiment: Experiment, overrides: Overrides, dir: &Path) -> CliResult<()> {
    let p = Params { o: overrides };
    let mut out = Output::create(dir, &experiment.name())?;
    let result = match experiment {
        Experiment::Fig1a => fig1a(&p, &mut out),
        Experiment::Fig1b => fig1b(&p, &mut out),
        Experiment::Fig2a | Experiment::Fig2b | Experiment::Fig2c => fig2(experiment, &p, &mut out),
        Experiment::Fig2d => fig2d(&p, &mut out),
        Experiment::Fig3 => fig3(&p, &mut out),
        Experiment::Fig4a => fig4a(&p, &mut out),
        Experiment::Fig4b => fig4b(&p, &mut out),
        Experiment::Ensemble => ensemble(&p, &mut out),
        Experiment::Enumerate => enumerate(&p, &mut out),
        Experiment::Acceptance => accept(&mut out),
    };
    // the manifest is written even when acceptance fails
    match result {
        Ok(()) => {
            out.finish()?;
            Ok(())
        }
        Err(e @ CliError::AcceptanceFailed { .. }) => {
            out.finish()?;
            Err(e)
        }
        Err(e) => Err(e),
    }
}

fn two_point_rows(
    quantity: &str,
    calc: &TwoPointCalculator,
    n: usize,
    grid: &[f64],
    rows: &mut Vec<ScanRow>,
) -> CliResult<()> {
    for j in 1..=n {
        for (&t, g) in grid.iter().zip(calc.series(j, grid)?) {
            rows.push(ScanRow::new(quantity, j, t, g));
        }
    }
    Ok(())
}

fn fig1a(p: &Params, out: &mut Output) -> CliResult<()> {
    let beta = p.beta(TWO_POINT_BETA)?;
    let mu = p.mu();
    let (grid, g) = p.grid(LONG_GRID)?;
    let coupled = couple(&learned_hamiltonian(), mu)?;
    let calc = TwoPointCalculator::new(System::Coupled(&coupled), beta, Normalization::Half)?;
    let mut rows = Vec::new();
    two_point_rows("two_point_coupled", &calc, 7, &grid, &mut rows)?;
    out.record("beta", beta);
    out.record("mu", mu);
    out.record("interaction_norm", coupled.norm.name());
    record_grid(out, "grid", g, grid.len());
    out.write("fig1a.csv", |w| write_scan(w, &rows))?;
    Ok(())
}

fn fig1b(p: &Params, out: &mut Output) -> CliResult<()> {
    let beta = p.beta(DEFAULT_WINDING_BETA)?;
    let (grid, g) = p.grid(LONG_GRID)?;
    let cfg = WindingConfig {
        beta,
        ..WindingConfig::default()
    };
    let calc = WindingCalculator::new(&learned_hamiltonian(), cfg)?;
    let mut rows = Vec::new();
    for j in 1..=7 {
        for &t in &grid {
            let d = calc.data(j, t)?;
            rows.push(ScanRow::real("p3", j, t, d.p[3]));
            rows.push(ScanRow::real("p5", j, t, d.p[5]));
        }
    }
    out.record("beta", beta);
    record_grid(out, "grid", g, grid.len());
    out.write("fig1b.csv", |w| write_scan(w, &rows))?;
    Ok(())
}

/// Best time and size data at that time for every fermion.
fn best_winding(
    spec: &HamiltonianSpec,
    cfg: WindingConfig,
    grid: &[f64],
) -> CliResult<Vec<(usize, Option<SizeWindingData>)>> {
    let calc = WindingCalculator::new(spec, cfg)?;
    (1..=spec.n_fermions())
        .map(|j| {
            let data = match calc.best_time(j, grid)? {
                Some(t) => Some(calc.data(j, t)?),
                None => None,
            };
            Ok((j, data))
        })
        .collect()
}

fn write_phases(
    w: &mut impl Write,
    best: &[(usize, Option<SizeWindingData>)],
    floor: f64,
) -> std::io::Result<()> {
    writeln!(w, "# fermion,time,size,phase,ratio")?;
    for (j, d) in best {
        if let Some(d) = d {
            for (l, phase) in d.phases(floor) {
                writeln!(w, "{j},{},{l},{phase},{}", d.time, d.q[l].norm() / d.p[l])?;
            }
        }
    }
    Ok(())
}

fn fig2(which: Experiment, p: &Params, out: &mut Output) -> CliResult<()> {
    let beta = p.beta(DEFAULT_WINDING_BETA)?;
    let threshold = p.threshold();
    let (grid, g) = p.grid(LONG_GRID)?;
    let cfg = WindingConfig {
        beta,
        threshold,
        ..WindingConfig::default()
    };
    let best = best_winding(&learned_hamiltonian(), cfg, &grid)?;
    out.record("winding_beta", beta);
    out.record("threshold", threshold);
    out.record("weight_floor", cfg.weight_floor);
    record_grid(out, "grid", g, grid.len());
    match which {
        Experiment::Fig2a => {
            let mu = p.mu();
            let coupled = couple(&learned_hamiltonian(), mu)?;
            let calc = TwoPointCalculator::new(
                System::Coupled(&coupled),
                TWO_POINT_BETA,
                Normalization::Half,
            )?;
            let g: Vec<_> = (1..=7)
                .map(|j| calc.at(j, TELEPORT_TIME))
                .collect::<wormlab_core::Result<_>>()?;
            out.record("two_point_beta", TWO_POINT_BETA);
            out.record("two_point_time", TELEPORT_TIME);
            out.record("mu", mu);
            out.write("fig2a.csv", |w| {
                writeln!(w, "# fermion,best_time,re_two_point,abs_two_point")?;
                for ((j, d), z) in best.iter().zip(&g) {
                    let t = d.as_ref().map_or(String::new(), |d| d.time.to_string());
                    writeln!(w, "{j},{t},{},{}", z.re, z.norm())?;
                }
                Ok(())
            })?;
        }
        Experiment::Fig2b => {
            out.write("fig2b.csv", |w| {
                writeln!(w, "# fermion,time,size,phase")?;
                for (j, d) in &best {
                    if let Some(d) = d {
                        for (l, phase) in d.phases(cfg.weight_floor) {
                            writeln!(w, "{j},{},{l},{phase}", d.time)?;
                        }
                    }
                }
                Ok(())
            })?;
        }
        _ => {
            out.write("fig2c.csv", |w| {
                writeln!(w, "# fermion,time,size,ratio")?;
                for (j, d) in &best {
                    if let Some(d) = d {
                        for l in d
                            .odd_sizes()
                            .into_iter()
                            .filter(|&l| d.p[l] > cfg.weight_floor)
                        {
                            writeln!(w, "{j},{},{l},{}", d.time, d.q[l].norm() / d.p[l])?;
                        }
                    }
                }
                Ok(())
            })?;
        }
    }
    Ok(())
}

fn record_protocol(out: &mut Output, cfg: &ProtocolConfig) {
    out.record("mode", cfg.mode.name());
    out.record("beta", cfg.beta);
    out.record("t0", cfg.t0);
    out.record("mu", cfg.mu);
    out.record(
        "inject_pair",
        format!("{}-{}", cfg.inject_pair.0, cfg.inject_pair.1),
    );
    out.record(
        "readout_pair",
        format!("{}-{}", cfg.readout_pair.0, cfg.readout_pair.1),
    );
    out.record("interaction_norm", cfg.norm.name());
    out.record("normalization", cfg.normalization.name());
}

fn sweep(
    out: &mut Output,
    name: &str,
    cfg: &ProtocolConfig,
    grid: &[f64],
) -> CliResult<TeleportSeries> {
    let series = teleport_sweep(cfg, grid, true)?;
    out.write(name, |w| series.write_csv(w))?;
    Ok(series)
}

fn fig2d(p: &Params, out: &mut Output) -> CliResult<()> {
    let (grid, g) = p.grid(SHORT_GRID)?;
    let cfg = ProtocolConfig {
        beta: p.beta(DEFAULT_WINDING_BETA)?,
        mu: p.mu(),
        t0: 4.0,
        inject_pair: (4, 7),
        readout_pair: (4, 7),
        ..ProtocolConfig::default()
    };
    record_protocol(out, &cfg);
    record_grid(out, "t1_grid", g, grid.len());
    sweep(out, "fig2d.csv", &cfg, &grid)?;
    Ok(())
}

fn fig3(p: &Params, out: &mut Output) -> CliResult<()> {
    let (grid, g) = p.grid(SHORT_GRID)?;
    let long = time_grid(LONG_GRID.0, LONG_GRID.1, LONG_GRID.2)?;
    let learned = learned_hamiltonian();
    let perturbed = learned.combined(&perturbation())?;
    let base = ProtocolConfig {
        beta: p.beta(DEFAULT_WINDING_BETA)?,
        mu: p.mu(),
        ..ProtocolConfig::default()
    };
    record_protocol(out, &base);
    record_grid(out, "t1_grid", g, grid.len());
    record_grid(out, "two_point_grid", LONG_GRID, long.len());
    out.record("two_point_beta", TWO_POINT_BETA);
    for (panel, h) in [("fig3a", &learned), ("fig3b", &perturbed)] {
        let calc = TwoPointCalculator::new(System::Single(h), TWO_POINT_BETA, Normalization::Half)?;
        let mut rows = Vec::new();
        two_point_rows("two_point_single", &calc, 7, &long, &mut rows)?;
        out.write(&format!("{panel}_two_point.csv"), |w| write_scan(w, &rows))?;
        let cfg = ProtocolConfig {
            tfd_hamiltonian: h.clone(),
            hamiltonian: h.clone(),
            ..base.clone()
        };
        sweep(out, &format!("{panel}_mutual_info.csv"), &cfg, &grid)?;
    }
    let cfg = WindingConfig {
        threshold: p.threshold(),
        ..WindingConfig::default()
    };
    out.record("winding_beta", cfg.beta);
    out.record("threshold", cfg.threshold);
    let best = best_winding(&perturbed, cfg, &long)?;
    out.write("fig3c.csv", |w| write_phases(w, &best, cfg.weight_floor))?;
    Ok(())
}

fn fig4a(p: &Params, out: &mut Output) -> CliResult<()> {
    let beta = p.beta(TWO_POINT_BETA)?;
    let seed = p.seed();
    let (grid, g) = p.grid(LONG_GRID)?;
    let h0 = learned_hamiltonian();
    let syk = syk_sample(7, syk_default_scale(7), seed)?;
    let schedule = FloquetSchedule::default();
    let mut rows = Vec::new();
    for j in 1..=7 {
        let f = floquet_two_point_series(
            &h0,
            &perturbation(),
            schedule,
            beta,
            j,
            &grid,
            Normalization::Half,
        )?;
        for (&t, z) in grid.iter().zip(f) {
            rows.push(ScanRow::new("floquet", j, t, z));
        }
    }
    let plain = TwoPointCalculator::new(System::Single(&h0), beta, Normalization::Half)?;
    two_point_rows("h0", &plain, 7, &grid, &mut rows)?;
    let syk_calc = TwoPointCalculator::new(System::Single(&syk), beta, Normalization::Half)?;
    two_point_rows("syk", &syk_calc, 7, &grid, &mut rows)?;
    out.record("beta", beta);
    out.record("seed", seed);
    out.record("syk_scale", syk_default_scale(7));
    out.record("floquet_segment", schedule.segment_length());
    record_grid(out, "grid", g, grid.len());
    out.write("fig4a.csv", |w| write_scan(w, &rows))?;
    Ok(())
}

fn fig4b(p: &Params, out: &mut Output) -> CliResult<()> {
    let (grid, g) = p.grid(SHORT_GRID)?;
    let cfg = ProtocolConfig {
        beta: p.beta(DEFAULT_WINDING_BETA)?,
        mu: p.mu(),
        mode: ProtocolMode::Floquet,
        ..ProtocolConfig::default()
    };
    record_protocol(out, &cfg);
    out.record("floquet_segment", cfg.floquet.segment_length());
    record_grid(out, "t1_grid", g, grid.len());
    sweep(out, "fig4b.csv", &cfg, &grid)?;
    Ok(())
}

fn ensemble(p: &Params, out: &mut Output) -> CliResult<()> {
    let n = p.o.samples.unwrap_or(acceptance::ENSEMBLE_SAMPLES);
    let t = p.o.time.unwrap_or(TELEPORT_TIME);
    let seed = p.o.seed.unwrap_or(acceptance::ENSEMBLE_SEED);
    let beta = p.beta(DEFAULT_WINDING_BETA)?;
    if n == 0 {
        return Err(CliError::Config(
            "ensemble needs at least one sample".into(),
        ));
    }
    let policies = [
        ComparisonPolicy::SortedDominance,
        ComparisonPolicy::Threshold(p.threshold()),
        ComparisonPolicy::MeanBased,
    ];
    let reports = ensemble_stats_all(n, t, seed, &policies, beta)?;
    out.record("samples", n);
    out.record("time", t);
    out.record("seed", seed);
    out.record("beta", beta);
    out.record("threshold", p.threshold());
    let reference: Vec<String> = reports[0].reference.iter().map(|x| x.to_string()).collect();
    out.record("reference", reference.join(";"));
    out.write("ensemble.csv", |w| {
        writeln!(
            w,
            "# policy,n_samples,fraction_best_two,stderr_best_two,fraction_all,stderr_all"
        )?;
        for r in &reports {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                r.policy.name(),
                r.n_samples,
                r.fraction_best_two,
                r.stderr_best_two,
                r.fraction_all,
                r.stderr_all
            )?;
        }
        Ok(())
    })?;
    for r in &reports {
        println!(
            "{}: best two {:.3} +- {:.3}, all {:.3} +- {:.3}",
            r.policy.name(),
            r.fraction_best_two,
            r.stderr_best_two,
            r.fraction_all,
            r.stderr_all
        );
    }
    Ok(())
}

fn structure_text(s: &Structure) -> String {
    s.iter()
        .map(|t| {
            t.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join("-")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn enumerate(p: &Params, out: &mut Output) -> CliResult<()> {
    let n = p.o.fermions.unwrap_or(7);
    let k = p.o.terms.unwrap_or(5);
    let report = enumerate_commuting_report(n, k)?;
    out.record("fermions", n);
    out.record("terms", k);
    out.record("raw_sets", report.raw_count);
    out.record("covering_orbits", report.covering.len());
    out.record("unconstrained_orbits", report.all.len());
    out.write("enumerate.csv", |w| {
        writeln!(w, "# kind,orbit,supports")?;
        for (kind, list) in [("covering", &report.covering), ("all", &report.all)] {
            for (i, s) in list.iter().enumerate() {
                writeln!(w, "{kind},{i},{}", structure_text(s))?;
            }
        }
        Ok(())
    })?;
    println!(
        "{} covering orbit(s), {} without the covering constraint, {} raw sets",
        report.covering.len(),
        report.all.len(),
        report.raw_count
    );
    Ok(())
}

fn accept(out: &mut Output) -> CliResult<()> {
    let outcomes = acceptance::run_all()?;
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    out.record("passed", outcomes.len() - failed);
    out.record("total", outcomes.len());
    out.write("acceptance.txt", |w| {
        for o in &outcomes {
            writeln!(w, "{o}")?;
        }
        Ok(())
    })?;
    if failed > 0 {
        return Err(CliError::AcceptanceFailed {
            failed,
            total: outcomes.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Config("x".into()).exit_code(), 2);
        assert_eq!(
            CliError::Core(wormlab_core::Error::EmptyGrid).exit_code(),
            2
        );
        assert_eq!(
            CliError::AcceptanceFailed {
                failed: 1,
                total: 10
            }
            .exit_code(),
            3
        );
        let io = std::io::Error::other("disk");
        assert_eq!(CliError::Io(io).exit_code(), 1);
    }

    #[test]
    fn default_grid_is_resolved() {
        let p = Params {
            o: Overrides::default(),
        };
        let (grid, g) = p.grid(SHORT_GRID).unwrap();
        assert_eq!(g, SHORT_GRID);
        assert_eq!(grid.len(), 101);
        let bad = Params {
            o: Overrides {
                grid_start: Some(5.0),
                grid_stop: Some(1.0),
                ..Default::default()
            },
        };
        assert!(matches!(bad.grid(SHORT_GRID), Err(CliError::Config(_))));
    }
}
