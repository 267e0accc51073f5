use super::{CoupledSpec, HamiltonianSpec, InteractionNorm, Term};
use crate::dynamics::C64;
use crate::error::{Error, Result};
use crate::majorana::{jordan_wigner, PauliSum, Side};
use nalgebra::DVector;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

/// Supports of the commuting ensemble, before relabeling.
pub const ENSEMBLE_SUPPORTS: [[usize; 4]; 5] = [
    [1, 2, 3, 4],
    [1, 2, 5, 6],
    [3, 4, 5, 6],
    [1, 3, 5, 7],
    [2, 4, 5, 7],
];

/// The five-term commuting seven-fermion model.
pub fn learned_hamiltonian() -> HamiltonianSpec {
    let terms = vec![
        Term::new(-0.36, [1, 2, 4, 5]),
        Term::new(0.19, [1, 3, 4, 7]),
        Term::new(-0.71, [1, 3, 5, 6]),
        Term::new(0.22, [2, 3, 4, 6]),
        Term::new(0.49, [2, 3, 5, 7]),
    ];
    HamiltonianSpec::new(terms, 7, Side::Single).expect("valid built-in model")
}

/// Single non-commuting term added on top of the learned model.
pub fn perturbation() -> HamiltonianSpec {
    HamiltonianSpec::new(vec![Term::new(0.3, [1, 2, 3, 5])], 7, Side::Single)
        .expect("valid built-in perturbation")
}

/// Coupling scale `J` whose SYK coefficients have the same r.m.s. as the learned model.
pub fn syk_default_scale(n_fermions: usize) -> f64 {
    let n = n_fermions as f64;
    learned_hamiltonian().rms_coefficient() * (n.powi(3) / 6.0).sqrt()
}

/// All `C(n, 4)` supports with i.i.d. normal couplings of variance `3! J^2 / n^3`.
pub fn syk_sample(n_fermions: usize, coupling_scale: f64, seed: u64) -> Result<HamiltonianSpec> {
    if n_fermions < 4 {
        return Err(Error::InvalidConfig(format!(
            "SYK needs at least 4 fermions, got {n_fermions}"
        )));
    }
    let n = n_fermions as f64;
    let sigma = (6.0 * coupling_scale.powi(2) / n.powi(3)).sqrt();
    let dist = Normal::new(0.0, sigma)
        .map_err(|e| Error::InvalidConfig(format!("coupling scale: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for s in four_subsets(n_fermions) {
        terms.push(Term::new(dist.sample(&mut rng), s));
    }
    HamiltonianSpec::new(terms, n_fermions, Side::Single)
}

/// Options for [`commuting_ensemble_sample_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleOptions {
    pub relabel: bool,
    /// Standard deviation of the couplings.
    pub sigma: f64,
}

impl Default for EnsembleOptions {
    fn default() -> Self {
        EnsembleOptions {
            relabel: true,
            sigma: 1.0,
        }
    }
}

/// Random member of the commuting ensemble with standard-normal couplings and a
/// random relabeling of the seven fermions.
pub fn commuting_ensemble_sample(seed: u64) -> HamiltonianSpec {
    commuting_ensemble_sample_with(seed, EnsembleOptions::default())
}

pub fn commuting_ensemble_sample_with(seed: u64, opts: EnsembleOptions) -> HamiltonianSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms: Vec<Term> = ENSEMBLE_SUPPORTS
        .iter()
        .map(|&s| {
            let z: f64 = StandardNormal.sample(&mut rng);
            Term::new(opts.sigma * z, s)
        })
        .collect();
    let spec = HamiltonianSpec::new(terms, 7, Side::Single).expect("valid ensemble supports");
    if !opts.relabel {
        return spec;
    }
    let mut perm: Vec<usize> = (1..=7).collect();
    perm.shuffle(&mut rng);
    spec.relabeled(&perm).expect("permutation of 7 labels")
}

/// Every 4-subset of `1..=n` in lexicographic order.
pub fn four_subsets(n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for d in c + 1..=n {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Pauli-sum image of a spec on `n_qubits` with unit generators, each fermion index
/// mapped to a register generator by `embed`.
pub(crate) fn spec_pauli_sum(
    spec: &HamiltonianSpec,
    n_qubits: usize,
    scale: f64,
    embed: impl Fn(usize) -> usize,
) -> Result<PauliSum> {
    let mut sum = PauliSum::default();
    for t in spec.terms() {
        let mut acc = crate::majorana::PauliString::identity(n_qubits);
        for &i in &t.support {
            acc = acc.product(&jordan_wigner(embed(i), n_qubits)?);
        }
        sum.push(C64::new(t.coefficient * scale, 0.0), acc);
    }
    Ok(sum)
}

/// Sign `s` such that `(H_L - s H_R')|I> = 0`, where `H_R'` copies the left couplings
/// onto the right partners and `|I>` is the all-zero two-sided state.
pub fn tfd_right_sign(left: &HamiltonianSpec) -> Result<f64> {
    let n = left.n_fermions();
    let mut vac = DVector::<C64>::zeros(1 << n);
    vac[0] = C64::new(1.0, 0.0);
    let hl = spec_pauli_sum(left, n, 1.0, |i| 2 * i - 1)?.apply(&vac);
    let hr = spec_pauli_sum(left, n, 1.0, |i| 2 * i)?.apply(&vac);
    for s in [1.0, -1.0] {
        if (&hl - &hr * C64::new(s, 0.0)).norm() < 1e-12 {
            return Ok(s);
        }
    }
    Err(Error::InvalidConfig(
        "no right-side sign annihilates the infinite-temperature TFD".into(),
    ))
}

/// Doubles `left` into `H_L + H_R + mu V` with the TFD-compatible right copy.
pub fn couple(left: &HamiltonianSpec, mu: f64) -> Result<CoupledSpec> {
    couple_with(left, mu, InteractionNorm::default())
}

pub fn couple_with(left: &HamiltonianSpec, mu: f64, norm: InteractionNorm) -> Result<CoupledSpec> {
    if left.side() == Side::Right {
        return Err(Error::InvalidConfig(
            "left input is a right-side spec".into(),
        ));
    }
    let sign = tfd_right_sign(left)?;
    Ok(CoupledSpec {
        left: left.with_side(Side::Left),
        right: left.scaled(sign).with_side(Side::Right),
        mu,
        norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::is_mutually_commuting;

    #[test]
    fn learned_model_structure() {
        let h = learned_hamiltonian();
        assert_eq!(h.len(), 5);
        assert!(is_mutually_commuting(&h));
        assert!(h.occupancy().iter().all(|&k| k >= 2));
        let both = h.combined(&perturbation()).unwrap();
        assert!(!is_mutually_commuting(&both));
    }

    #[test]
    fn perturbation_is_median_scale() {
        let mut c: Vec<f64> = learned_hamiltonian()
            .terms()
            .iter()
            .map(|t| t.coefficient.abs())
            .collect();
        c.sort_by(f64::total_cmp);
        let ratio = perturbation().terms()[0].coefficient / c[2];
        assert!(ratio > 0.5 && ratio < 2.0);
    }

    #[test]
    fn syk_term_count_and_determinism() {
        let a = syk_sample(7, 1.0, 11).unwrap();
        assert_eq!(a.len(), 35);
        assert_eq!(a, syk_sample(7, 1.0, 11).unwrap());
        assert_ne!(a, syk_sample(7, 1.0, 12).unwrap());
        assert_eq!(syk_sample(8, 1.0, 0).unwrap().len(), 70);
        assert!(syk_sample(3, 1.0, 0).is_err());
    }

    #[test]
    fn syk_default_scale_matches_learned_rms() {
        let j = syk_default_scale(7);
        let expected = (6.0 * j * j / 343.0f64).sqrt();
        assert!((expected - learned_hamiltonian().rms_coefficient()).abs() < 1e-12);
    }

    #[test]
    fn ensemble_samples_commute_and_touch_all() {
        for seed in 0..50 {
            let h = commuting_ensemble_sample(seed);
            assert!(is_mutually_commuting(&h));
            assert!(h.touches_all());
        }
        let plain = commuting_ensemble_sample_with(
            3,
            EnsembleOptions {
                relabel: false,
                sigma: 1.0,
            },
        );
        let supports: Vec<_> = plain.terms().iter().map(|t| t.support).collect();
        assert_eq!(supports, ENSEMBLE_SUPPORTS.to_vec());
    }

    #[test]
    fn right_copy_has_positive_sign() {
        let c = couple(&learned_hamiltonian(), -12.0).unwrap();
        assert_eq!(c.right.terms()[0].coefficient, -0.36);
        assert_eq!(c.right.side(), Side::Right);
    }
}
