mod common;

use approx::assert_abs_diff_eq;
use common::{c, max_abs, single_hamiltonian, M};
use nalgebra::DVector;
use proptest::prelude::*;
use wormlab_core::{
    build_coupled, build_dense, commuting_ensemble_sample, couple, evolve, floquet_evolve,
    heisenberg_evolve, learned_hamiltonian, perturbation, tfd_prepare, DenseOperator,
    FloquetSchedule, FloquetStart, Normalization, Register, Side, StateVector, C64,
};

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn left_hamiltonian() -> (Register, DenseOperator) {
    let reg = Register::two_sided(7, Normalization::Half);
    let h = build_dense(&learned_hamiltonian().with_side(Side::Left), &reg).unwrap();
    (reg, h)
}

fn expectation(state: &StateVector, op: &DenseOperator) -> C64 {
    state.inner(&state.apply(op).unwrap())
}

#[test]
fn single_copy_matches_kronecker_build() {
    let reg = Register::single_sided(7, Normalization::Half);
    let spec = learned_hamiltonian();
    let h = build_dense(&spec, &reg).unwrap();
    assert!(max_abs(&(h.matrix() - single_hamiltonian(&spec, S))) < 1e-14);
}

#[test]
fn tfd_energy_is_thermal_energy() {
    let (_, hl) = left_hamiltonian();
    let h1 = single_hamiltonian(&learned_hamiltonian(), S);
    for beta in [0.0, 1.0, 4.0] {
        let tfd = tfd_prepare(
            &learned_hamiltonian().with_side(Side::Left),
            beta,
            Normalization::Half,
        )
        .unwrap();
        let w = common::function(&h1, |e| c((-beta * e).exp(), 0.0));
        let thermal = (&w * &h1).trace() / w.trace();
        assert_abs_diff_eq!(expectation(&tfd, &hl).re, thermal.re, epsilon = 1e-10);
    }
}

#[test]
fn high_temperature_tfd_is_the_infinite_temperature_state() {
    let tfd = tfd_prepare(
        &learned_hamiltonian().with_side(Side::Left),
        0.001,
        Normalization::Half,
    )
    .unwrap();
    assert!(tfd.amplitudes()[0].norm_sqr() > 0.999);
}

#[test]
fn coupled_ground_state_is_close_to_a_tfd() {
    let spec = couple(&learned_hamiltonian(), 12.0).unwrap();
    let reg = Register::two_sided(7, Normalization::Half);
    let ground = build_coupled(&spec, &reg).unwrap().eigen().ground_state();
    let best = (0..=200)
        .map(|k| {
            let beta = k as f64 * 0.05;
            let tfd = tfd_prepare(&spec.left, beta, Normalization::Half).unwrap();
            tfd.amplitudes().dotc(&ground).norm_sqr()
        })
        .fold(0.0, f64::max);
    assert!(best > 0.9, "best overlap {best}");
}

#[test]
fn left_and_right_hamiltonians_agree_on_the_reference_state() {
    let spec = couple(&learned_hamiltonian(), 0.0).unwrap();
    let reg = Register::two_sided(7, Normalization::Half);
    let l = build_dense(&spec.left, &reg).unwrap();
    let r = build_dense(&spec.right, &reg).unwrap();
    let vac = StateVector::basis(0, StateVector::fermion_labels(7)).unwrap();
    let diff = vac.apply(&l).unwrap().amplitudes() - vac.apply(&r).unwrap().amplitudes();
    assert!(diff.norm() < 1e-12);
}

#[test]
fn floquet_with_zero_perturbation_is_plain_evolution() {
    let reg = Register::single_sided(7, Normalization::Half);
    let h0 = build_dense(&learned_hamiltonian(), &reg).unwrap();
    let zero = DenseOperator::zeros(h0.dim());
    let mut v = DVector::from_element(h0.dim(), c(0.25, 0.0));
    v[3] = c(0.0, 0.5);
    let state = StateVector::new(v, StateVector::fermion_labels(4))
        .unwrap()
        .normalized();
    // over 9.1 the H0 segments add up to 5.6 when H0 runs first and 3.5 otherwise
    for (start, h0_time) in [(FloquetStart::H0First, 5.6), (FloquetStart::H1First, 3.5)] {
        let sched = FloquetSchedule::new(2.8, start).unwrap();
        let a = floquet_evolve(&state, &sched, &h0, &zero, 9.1).unwrap();
        let b = evolve(&state, &h0, h0_time).unwrap();
        assert!((a.amplitudes() - b.amplitudes()).norm() < 1e-10);
    }
}

#[test]
fn floquet_matches_explicit_segment_products() {
    let h0 = single_hamiltonian(&learned_hamiltonian(), S);
    let h1 = single_hamiltonian(&perturbation(), S);
    let reg = Register::single_sided(7, Normalization::Half);
    let d0 = build_dense(&learned_hamiltonian(), &reg).unwrap();
    let d1 = build_dense(&perturbation(), &reg).unwrap();
    let state = StateVector::basis(5, StateVector::fermion_labels(4)).unwrap();
    let got = floquet_evolve(&state, &FloquetSchedule::default(), &d0, &d1, 7.0).unwrap();
    let u: M =
        common::propagator(&h0, 1.4) * common::propagator(&h1, 2.8) * common::propagator(&h0, 2.8);
    let want = &u * state.amplitudes();
    assert!((got.amplitudes() - want).norm() < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn energy_is_conserved(seed in 0u64..1000, t in 0.0f64..50.0) {
        let reg = Register::single_sided(7, Normalization::Half);
        let h = build_dense(&commuting_ensemble_sample(seed), &reg).unwrap();
        let state = StateVector::basis((seed % 16) as usize, StateVector::fermion_labels(4)).unwrap();
        let later = evolve(&state, &h, t).unwrap();
        prop_assert!((later.norm() - 1.0).abs() < 1e-12);
        prop_assert!((expectation(&state, &h) - expectation(&later, &h)).norm() < 1e-10);
    }

    #[test]
    fn evolution_composes(t1 in 0.0f64..20.0, t2 in 0.0f64..20.0) {
        let (_, h) = left_hamiltonian();
        let s = StateVector::basis(0, StateVector::fermion_labels(7)).unwrap();
        let a = evolve(&evolve(&s, &h, t1).unwrap(), &h, t2).unwrap();
        let b = evolve(&s, &h, t1 + t2).unwrap();
        prop_assert!((a.amplitudes() - b.amplitudes()).norm() < 1e-10);
    }

    #[test]
    fn heisenberg_matches_explicit_conjugation(t in 0.0f64..10.0, j in 1usize..=7) {
        let reg = Register::single_sided(7, Normalization::Half);
        let h = build_dense(&learned_hamiltonian(), &reg).unwrap();
        let psi = reg.majorana(Side::Single, j).unwrap();
        let got = heisenberg_evolve(&psi, &h, t).unwrap();
        let hm = single_hamiltonian(&learned_hamiltonian(), S);
        let u = common::propagator(&hm, t);
        let want = u.adjoint() * psi.matrix() * &u;
        prop_assert!(max_abs(&(got.matrix() - want)) < 1e-10);
    }
}
