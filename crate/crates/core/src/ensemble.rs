//! Random commuting-model statistics and the uniqueness check.

use crate::error::{Error, Result};
use crate::hamiltonian::{
    canonical_structure, commuting_ensemble_sample_with, enumerate_commuting_report,
    learned_hamiltonian, EnsembleOptions, HamiltonianSpec, Structure, ENSEMBLE_SUPPORTS,
};
use crate::majorana::Side;
use crate::observables::{WindingCalculator, WindingConfig};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// How a sample's winding-quality vector is compared with the reference model's.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum ComparisonPolicy {
    /// Sorted values elementwise `<=` the reference's sorted values.
    #[default]
    SortedDominance,
    /// Sorted values each below a fixed quality threshold.
    Threshold(f64),
    /// Mean of the compared values `<=` the reference mean.
    MeanBased,
}

impl ComparisonPolicy {
    pub fn name(&self) -> String {
        match self {
            ComparisonPolicy::SortedDominance => "sorted-dominance".into(),
            ComparisonPolicy::Threshold(x) => format!("threshold-{x}"),
            ComparisonPolicy::MeanBased => "mean".into(),
        }
    }

    /// Whether the first `k` sorted entries of `sample` are as good as `reference`'s.
    pub fn qualifies(&self, sample: &[f64], reference: &[f64], k: usize) -> bool {
        let (s, r) = (&sample[..k], &reference[..k]);
        match self {
            ComparisonPolicy::SortedDominance => s.iter().zip(r).all(|(a, b)| a <= b),
            ComparisonPolicy::Threshold(x) => s.iter().all(|a| a < x),
            ComparisonPolicy::MeanBased => {
                s.iter().sum::<f64>() / k as f64 <= r.iter().sum::<f64>() / k as f64
            }
        }
    }
}

/// Outcome of an ensemble run under one comparison policy.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleReport {
    pub n_samples: usize,
    pub fraction_best_two: f64,
    pub fraction_all: f64,
    /// Binomial standard errors of the two fractions.
    pub stderr_best_two: f64,
    pub stderr_all: f64,
    /// Sorted winding-quality values of the reference model.
    pub reference: Vec<f64>,
    pub seed: u64,
    pub time: f64,
    pub beta: f64,
    pub policy: ComparisonPolicy,
}

/// Sorted per-fermion winding-quality values, undefined entries as `+inf`.
pub fn quality_vector(spec: &HamiltonianSpec, t: f64, config: WindingConfig) -> Result<Vec<f64>> {
    let calc = WindingCalculator::new(spec, config)?;
    let mut v = (1..=spec.n_fermions())
        .map(|j| calc.quality(j, t).map(|w| w.value()))
        .collect::<Result<Vec<f64>>>()?;
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Sorted quality vectors of `n` ensemble samples, in sample order.
pub fn ensemble_vectors(
    n: usize,
    t: f64,
    seed: u64,
    config: WindingConfig,
) -> Result<Vec<Vec<f64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..n).map(|_| rng.next_u64()).collect();
    seeds
        .par_iter()
        .map(|&s| {
            let h = commuting_ensemble_sample_with(s, EnsembleOptions::default());
            quality_vector(&h, t, config)
        })
        .collect()
}

fn binomial_se(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Report for one policy from precomputed vectors.
pub fn report_from_vectors(
    vectors: &[Vec<f64>],
    reference: &[f64],
    policy: ComparisonPolicy,
    seed: u64,
    t: f64,
    beta: f64,
) -> EnsembleReport {
    let n = vectors.len();
    let k_all = reference.len();
    let best_two = vectors
        .iter()
        .filter(|v| policy.qualifies(v, reference, 2.min(k_all)))
        .count();
    let all = vectors
        .iter()
        .filter(|v| policy.qualifies(v, reference, k_all))
        .count();
    let f2 = best_two as f64 / n as f64;
    let fa = all as f64 / n as f64;
    EnsembleReport {
        n_samples: n,
        fraction_best_two: f2,
        fraction_all: fa,
        stderr_best_two: binomial_se(f2, n),
        stderr_all: binomial_se(fa, n),
        reference: reference.to_vec(),
        seed,
        time: t,
        beta,
        policy,
    }
}

/// Fractions of `n` random commuting models whose size winding at time `t` is as good
/// as the learned model's, on its best two fermions and on all fermions.
pub fn ensemble_stats(
    n: usize,
    t: f64,
    seed: u64,
    policy: ComparisonPolicy,
    beta: f64,
) -> Result<EnsembleReport> {
    Ok(ensemble_stats_all(n, t, seed, &[policy], beta)?.remove(0))
}

/// Same samples evaluated under several policies.
pub fn ensemble_stats_all(
    n: usize,
    t: f64,
    seed: u64,
    policies: &[ComparisonPolicy],
    beta: f64,
) -> Result<Vec<EnsembleReport>> {
    if n == 0 {
        return Err(Error::InvalidConfig(
            "ensemble needs at least one sample".into(),
        ));
    }
    let config = WindingConfig {
        beta,
        ..WindingConfig::default()
    };
    let reference = quality_vector(&learned_hamiltonian(), t, config)?;
    let vectors = ensemble_vectors(n, t, seed, config)?;
    Ok(policies
        .iter()
        .map(|&p| report_from_vectors(&vectors, &reference, p, seed, t, beta))
        .collect())
}

/// Result of the exhaustive commuting-structure search.
#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessReport {
    pub covering_orbits: Vec<Structure>,
    pub unconstrained_orbits: usize,
    pub raw_sets: usize,
    pub learned_form: Structure,
    pub ensemble_form: Structure,
}

impl UniquenessReport {
    /// Exactly one covering orbit, equal to both the learned and the ensemble supports.
    pub fn is_unique_and_matching(&self) -> bool {
        self.covering_orbits.len() == 1
            && self.covering_orbits[0] == self.learned_form
            && self.learned_form == self.ensemble_form
    }
}

pub fn verify_uniqueness() -> Result<UniquenessReport> {
    let report = enumerate_commuting_report(7, 5)?;
    let ensemble = HamiltonianSpec::new(
        ENSEMBLE_SUPPORTS
            .iter()
            .map(|&s| crate::hamiltonian::Term::new(1.0, s))
            .collect(),
        7,
        Side::Single,
    )?;
    Ok(UniquenessReport {
        unconstrained_orbits: report.all.len(),
        raw_sets: report.raw_count,
        covering_orbits: report.covering,
        learned_form: canonical_structure(&learned_hamiltonian()),
        ensemble_form: canonical_structure(&ensemble),
    })
}
