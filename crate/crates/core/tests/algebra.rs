mod common;

use common::{c, generator, max_abs, monomial_matrix, M};
use proptest::prelude::*;
use wormlab_core::majorana::{expand_on_register, Layout};
use wormlab_core::{
    commuting_ensemble_sample, expand_in_monomials, jordan_wigner, learned_hamiltonian,
    monomial_product, monomials_commute, Monomial, Normalization, OperatorExpansion, Phase,
    Register, Side,
};

const N: usize = 8;
const NQ: usize = 4;

fn monomial() -> impl Strategy<Value = Monomial> {
    (0u32..1 << N, 0u8..4)
        .prop_map(|(mask, k)| Monomial::from_mask(mask, N).with_phase(Phase::i_pow(k as i64)))
}

fn dense(m: &Monomial) -> M {
    monomial_matrix(m.mask(), m.phase().exponent(), NQ)
}

proptest! {
    #[test]
    fn product_is_associative(a in monomial(), b in monomial(), d in monomial()) {
        let left = monomial_product(&monomial_product(&a, &b), &d);
        let right = monomial_product(&a, &monomial_product(&b, &d));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_matches_matrices(a in monomial(), b in monomial()) {
        let p = monomial_product(&a, &b);
        prop_assert!(max_abs(&(dense(&a) * dense(&b) - dense(&p))) < 1e-12);
    }

    #[test]
    fn commutation_matches_matrices(a in monomial(), b in monomial()) {
        let (x, y) = (dense(&a), dense(&b));
        let commute = max_abs(&(&x * &y - &y * &x)) < 1e-12;
        prop_assert_eq!(monomials_commute(&a, &b), commute);
    }

    #[test]
    fn adjoint_matches_matrices(a in monomial()) {
        prop_assert!(max_abs(&(dense(&a).adjoint() - dense(&a.adjoint()))) < 1e-12);
    }

    #[test]
    fn expansion_round_trip(coeffs in proptest::collection::vec((0u32..128, -1.0f64..1.0, -1.0f64..1.0), 1..12)) {
        let exp = OperatorExpansion::from_terms(
            coeffs.iter().map(|&(m, re, im)| (m, c(re, im))),
            7,
        );
        let reg = Register::single_sided(7, Normalization::Unit);
        let op = exp.to_dense(&reg, Side::Single).unwrap();
        let back = expand_in_monomials(&op, 7, 0.0).unwrap();
        for mask in 0..128u32 {
            let m = Monomial::from_mask(mask, 7);
            prop_assert!((exp.amplitude(&m) - back.amplitude(&m)).norm() < 1e-12);
        }
    }

    #[test]
    fn evolution_preserves_parity(seed in 0u64..500, t in 0.0f64..10.0) {
        let h = commuting_ensemble_sample(seed);
        let reg = Register::single_sided(7, Normalization::Half);
        let hd = wormlab_core::build_dense(&h.with_side(Side::Single), &reg).unwrap();
        let psi = reg.majorana(Side::Single, 3).unwrap();
        let e = expand_on_register(&hd.eigen().heisenberg(&psi, t), &reg, Side::Single, 1e-12).unwrap();
        for (m, _) in e.iter() {
            prop_assert_eq!(m.size() % 2, 1);
        }
    }
}

#[test]
fn jordan_wigner_matches_kronecker_construction() {
    for g in 1..=2 * NQ {
        let p = jordan_wigner(g, NQ).unwrap();
        assert!(
            max_abs(&(p.to_dense() - generator(g, NQ))) < 1e-15,
            "generator {g}"
        );
    }
}

#[test]
fn register_scales_generators() {
    let reg = Register::two_sided(3, Normalization::Half);
    assert_eq!(reg.layout, Layout::TwoSided);
    let l = reg.majorana(Side::Left, 2).unwrap();
    let r = reg.majorana(Side::Right, 2).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert!(max_abs(&(l.matrix() - generator(3, 3) * c(s, 0.0))) < 1e-15);
    assert!(max_abs(&(r.matrix() - generator(4, 3) * c(s, 0.0))) < 1e-15);
}

#[test]
fn learned_spread_is_closed_under_relabeling() {
    // relabeling maps psi^1 to psi^{perm[0]}, so the support size is unchanged
    let perm = [3, 1, 2, 7, 5, 6, 4];
    let h = learned_hamiltonian();
    let g = h.relabeled(&perm).unwrap();
    let count = |spec: &wormlab_core::HamiltonianSpec, j: usize| {
        let reg = Register::single_sided(7, Normalization::Half);
        let hd = wormlab_core::build_dense(&spec.with_side(Side::Single), &reg).unwrap();
        let psi = reg.majorana(Side::Single, j).unwrap();
        expand_on_register(&hd.eigen().heisenberg(&psi, 2.8), &reg, Side::Single, 0.0)
            .unwrap()
            .normalized()
            .support(1e-8)
            .len()
    };
    assert_eq!(count(&h, 1), count(&g, perm[0]));
}
