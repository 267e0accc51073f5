use crate::dynamics::{StateVector, C64};
use crate::error::{Error, Result};
use nalgebra::DMatrix;

/// Von Neumann entropy in bits; eigenvalues below `1e-14` contribute nothing.
pub fn von_neumann_entropy(rho: &DMatrix<C64>) -> f64 {
    let sym = (rho + rho.adjoint()) * C64::new(0.5, 0.0);
    sym.symmetric_eigenvalues()
        .iter()
        .filter(|&&w| w > 1e-14)
        .map(|&w| -w * w.log2())
        .sum()
}

/// Entropy of the reduced state of `state` on `qubits`.
pub fn entanglement_entropy(state: &StateVector, qubits: &[usize]) -> Result<f64> {
    Ok(von_neumann_entropy(&state.reduced_density_matrix(qubits)?))
}

/// `I(A;B) = S(A) + S(B) - S(AB)` in bits.
pub fn mutual_information(state: &StateVector, part_a: &[usize], part_b: &[usize]) -> Result<f64> {
    if part_a.iter().any(|q| part_b.contains(q)) {
        return Err(Error::InvalidQubitSet);
    }
    let mut ab = part_a.to_vec();
    ab.extend_from_slice(part_b);
    let rho_ab = state.reduced_density_matrix(&ab)?;
    let s_ab = von_neumann_entropy(&rho_ab);
    let s_a = entanglement_entropy(state, part_a)?;
    let s_b = entanglement_entropy(state, part_b)?;
    Ok(s_a + s_b - s_ab)
}

/// Mutual information between qubit `a` and qubit `b` of a two-qubit-or-larger density matrix
/// given directly, with `a`, `b` local bit positions.
pub fn mutual_information_dm(rho: &DMatrix<C64>, a: usize, b: usize) -> Result<f64> {
    let n = rho.nrows().trailing_zeros() as usize;
    if a == b || a >= n || b >= n {
        return Err(Error::InvalidQubitSet);
    }
    let rab = partial_trace_keep(rho, &[a, b]);
    let ra = partial_trace_keep(rho, &[a]);
    let rb = partial_trace_keep(rho, &[b]);
    Ok(von_neumann_entropy(&ra) + von_neumann_entropy(&rb) - von_neumann_entropy(&rab))
}

/// Reduced density matrix on `keep` (local bit `i` = `keep[i]`).
pub fn partial_trace_keep(rho: &DMatrix<C64>, keep: &[usize]) -> DMatrix<C64> {
    let dim = rho.nrows();
    let k = keep.len();
    let sel: usize = keep.iter().map(|&q| 1usize << q).sum();
    let local = |b: usize| -> usize {
        keep.iter()
            .enumerate()
            .map(|(i, &q)| (b >> q & 1) << i)
            .sum()
    };
    let mut out = DMatrix::zeros(1 << k, 1 << k);
    for r in 0..dim {
        for c in 0..dim {
            if r & !sel == c & !sel {
                out[(local(r), local(c))] += rho[(r, c)];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::QubitRole;
    use nalgebra::DVector;

    fn labels(n: usize) -> Vec<QubitRole> {
        StateVector::fermion_labels(n)
    }

    #[test]
    fn bell_pair_has_two_bits() {
        let s = 0.5f64.sqrt();
        let v = DVector::from_vec(vec![
            C64::new(s, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(s, 0.0),
        ]);
        let st = StateVector::new(v, labels(2)).unwrap();
        assert!((mutual_information(&st, &[0], &[1]).unwrap() - 2.0).abs() < 1e-12);
        assert!(mutual_information(&st, &[0], &[0]).is_err());
    }

    #[test]
    fn product_state_has_none() {
        let st = StateVector::basis(2, labels(2)).unwrap();
        assert!(mutual_information(&st, &[0], &[1]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn density_matrix_path_agrees() {
        let v = DVector::from_fn(8, |i, _| C64::new(1.0 + i as f64, (i * i) as f64 * 0.1));
        let st = StateVector::new(v, labels(3)).unwrap().normalized();
        let rho = st.amplitudes() * st.amplitudes().adjoint();
        let a = mutual_information(&st, &[0], &[2]).unwrap();
        let b = mutual_information_dm(&rho, 0, 2).unwrap();
        assert!((a - b).abs() < 1e-12);
    }
}
