use proptest::prelude::*;
use wormlab_core::hamiltonian::{
    canonical_structure, enumerate_commuting_report, four_subsets, spec_from_text, spec_to_text,
    EnsembleOptions, ENSEMBLE_SUPPORTS,
};
use wormlab_core::majorana::masks_commute;
use wormlab_core::{
    commuting_ensemble_sample, enumerate_commuting_structures, is_mutually_commuting,
    learned_hamiltonian, syk_sample, Error, HamiltonianSpec, Side, Term,
};

/// Brute-force count of pairwise-commuting `k`-sets of 4-subsets, by plain nested loops.
fn brute_commuting_sets(n: usize, k: usize, covering: bool) -> usize {
    let subsets = four_subsets(n);
    let masks: Vec<u32> = subsets
        .iter()
        .map(|s| s.iter().map(|&i| 1u32 << (i - 1)).sum())
        .collect();
    fn go(
        masks: &[u32],
        start: usize,
        chosen: &mut Vec<u32>,
        k: usize,
        n: usize,
        covering: bool,
    ) -> usize {
        if chosen.len() == k {
            let all = chosen.iter().fold(0, |a, m| a | m);
            return usize::from(!covering || all.count_ones() as usize == n);
        }
        let mut total = 0;
        for i in start..masks.len() {
            if chosen.iter().all(|&m| masks_commute(m, masks[i])) {
                chosen.push(masks[i]);
                total += go(masks, i + 1, chosen, k, n, covering);
                chosen.pop();
            }
        }
        total
    }
    go(&masks, 0, &mut Vec::new(), k, n, covering)
}

#[test]
fn two_terms_cannot_cover_seven_fermions() {
    let r = enumerate_commuting_report(7, 2).unwrap();
    assert_eq!(r.covering.len(), 0);
    assert_eq!(r.all.len(), 1);
}

#[test]
fn five_term_orbit_is_unique_and_matches_both_models() {
    let orbits = enumerate_commuting_structures(7, 5).unwrap();
    assert_eq!(orbits.len(), 1);
    let ensemble = HamiltonianSpec::new(
        ENSEMBLE_SUPPORTS
            .iter()
            .map(|&s| Term::new(1.0, s))
            .collect(),
        7,
        Side::Single,
    )
    .unwrap();
    assert_eq!(orbits[0], canonical_structure(&learned_hamiltonian()));
    assert_eq!(orbits[0], canonical_structure(&ensemble));
}

#[test]
fn raw_counts_match_nested_loop_search() {
    for k in [2, 3, 5] {
        let r = enumerate_commuting_report(7, k).unwrap();
        assert_eq!(r.raw_count, brute_commuting_sets(7, k, false), "k = {k}");
        assert_eq!(
            r.covering.is_empty(),
            brute_commuting_sets(7, k, true) == 0,
            "k = {k}"
        );
    }
}

#[test]
fn oversized_enumeration_is_refused() {
    assert!(matches!(
        enumerate_commuting_structures(12, 5),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn syk_has_every_support_and_sample_variance() {
    let j = 1.3;
    let mut sum_sq = 0.0;
    let mut count = 0;
    for seed in 0..40 {
        let h = syk_sample(7, j, seed).unwrap();
        assert_eq!(h.len(), 35);
        for t in h.terms() {
            sum_sq += t.coefficient * t.coefficient;
            count += 1;
        }
    }
    let var = sum_sq / count as f64;
    let want = 6.0 * j * j / 343.0;
    assert!((var / want - 1.0).abs() < 0.15, "variance {var} vs {want}");
}

#[test]
fn unrelabeled_ensemble_uses_the_displayed_supports() {
    let h = wormlab_core::hamiltonian::commuting_ensemble_sample_with(
        3,
        EnsembleOptions {
            relabel: false,
            ..EnsembleOptions::default()
        },
    );
    let supports: Vec<[usize; 4]> = h.terms().iter().map(|t| t.support).collect();
    assert_eq!(supports, ENSEMBLE_SUPPORTS.to_vec());
}

proptest! {
    #[test]
    fn ensemble_samples_commute_and_are_deterministic(seed in any::<u64>()) {
        let h = commuting_ensemble_sample(seed);
        prop_assert!(is_mutually_commuting(&h));
        prop_assert!(h.touches_all());
        prop_assert_eq!(&h, &commuting_ensemble_sample(seed));
        prop_assert_eq!(canonical_structure(&h), canonical_structure(&learned_hamiltonian()));
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let h = syk_sample(7, 0.9, seed).unwrap();
        let back = spec_from_text(&spec_to_text(&h)).unwrap();
        prop_assert_eq!(back, h);
    }
}
