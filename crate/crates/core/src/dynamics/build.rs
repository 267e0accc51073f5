use super::{DenseOperator, C64};
use crate::error::{Error, Result};
use crate::hamiltonian::{spec_pauli_sum, CoupledSpec, HamiltonianSpec, InteractionNorm};
use crate::majorana::{Layout, Normalization, PauliSum, Register, Side};

/// Matrix of `spec` on `register`. Single-sided specs on a two-sided register sit on the left.
pub fn build_dense(spec: &HamiltonianSpec, register: &Register) -> Result<DenseOperator> {
    Ok(DenseOperator::from_matrix(
        hamiltonian_pauli_sum(spec, register)?.to_dense(register.n_qubits),
    ))
}

/// Single-sided matrix of `spec` on `ceil(n/2)` qubits.
pub fn build_single(spec: &HamiltonianSpec, normalization: Normalization) -> Result<DenseOperator> {
    build_dense(
        spec,
        &Register::single_sided(spec.n_fermions(), normalization),
    )
}

pub(crate) fn hamiltonian_pauli_sum(
    spec: &HamiltonianSpec,
    register: &Register,
) -> Result<PauliSum> {
    if spec.n_fermions() > register.n_fermions {
        return Err(Error::IndexOutOfRange {
            index: spec.n_fermions(),
            max: register.n_fermions,
        });
    }
    let scale = register.normalization.generator_scale().powi(4);
    match (register.layout, spec.side()) {
        (Layout::SingleSided, Side::Right) => Err(Error::InvalidConfig(
            "right-side spec on a single-sided register".into(),
        )),
        (Layout::SingleSided, _) => spec_pauli_sum(spec, register.n_qubits, scale, |i| i),
        (Layout::TwoSided, Side::Right) => {
            spec_pauli_sum(spec, register.n_qubits, scale, |i| 2 * i)
        }
        (Layout::TwoSided, _) => spec_pauli_sum(spec, register.n_qubits, scale, |i| 2 * i - 1),
    }
}

/// `c * i sum_j psi_L^j psi_R^j` as a Pauli sum, with `c` from `norm`.
pub fn interaction_pauli_sum(register: &Register, norm: InteractionNorm) -> Result<PauliSum> {
    if register.layout != Layout::TwoSided {
        return Err(Error::InvalidConfig(
            "interaction needs a two-sided register".into(),
        ));
    }
    let n = register.n_fermions;
    let c = norm.factor(n) * register.normalization.square();
    let mut sum = PauliSum::default();
    for j in 1..=n {
        let p = register
            .majorana_pauli(Side::Left, j)?
            .product(&register.majorana_pauli(Side::Right, j)?);
        sum.push(C64::new(0.0, c), p);
    }
    Ok(sum)
}

/// The normalised bilinear `V` as a matrix.
pub fn interaction_operator(register: &Register, norm: InteractionNorm) -> Result<DenseOperator> {
    Ok(DenseOperator::from_matrix(
        interaction_pauli_sum(register, norm)?.to_dense(register.n_qubits),
    ))
}

/// `H_L + H_R + mu V` on the two-sided register of `spec`.
pub fn build_coupled(spec: &CoupledSpec, register: &Register) -> Result<DenseOperator> {
    let mut sum = hamiltonian_pauli_sum(&spec.left, register)?;
    sum.terms
        .extend(hamiltonian_pauli_sum(&spec.right, register)?.terms);
    for (c, p) in interaction_pauli_sum(register, spec.norm)?.terms {
        sum.push(c * spec.mu, p);
    }
    Ok(DenseOperator::from_matrix(sum.to_dense(register.n_qubits)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{couple, learned_hamiltonian};

    #[test]
    fn zero_term_spec_is_zero() {
        let h = HamiltonianSpec::empty(7, Side::Single);
        let m = build_single(&h, Normalization::Half).unwrap();
        assert_eq!(m.max_abs(), 0.0);
    }

    #[test]
    fn left_and_right_commute() {
        let c = couple(&learned_hamiltonian(), 0.0).unwrap();
        let reg = Register::two_sided(7, Normalization::Half);
        let hl = build_dense(&c.left, &reg).unwrap();
        let hr = build_dense(&c.right, &reg).unwrap();
        assert!(hl.is_hermitian(1e-12));
        assert!(hl.commutator(&hr).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn interaction_is_diagonal() {
        let reg = Register::two_sided(7, Normalization::Half);
        let v = interaction_operator(&reg, InteractionNorm::None).unwrap();
        let m = v.matrix();
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                if r != c {
                    assert_eq!(m[(r, c)].norm(), 0.0);
                }
            }
        }
        // |0...0> has i psi_L psi_R = -1/2 per flavour
        assert!((m[(0, 0)] - C64::new(-3.5, 0.0)).norm() < 1e-12);
    }
}
