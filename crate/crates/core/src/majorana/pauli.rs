use super::{Monomial, Phase};
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// `phase * (sigma_0 ⊗ sigma_1 ⊗ ...)` where qubit `q` carries `I`, `X`, `Z` or `Y`
/// according to bit `q` of `x_mask` and `z_mask` (`Y` when both are set).
///
/// Basis states are little-endian: qubit `q` is bit `q` of the basis index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub x_mask: u32,
    pub z_mask: u32,
    pub phase: Phase,
    pub n_qubits: usize,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        PauliString {
            x_mask: 0,
            z_mask: 0,
            phase: Phase::ONE,
            n_qubits,
        }
    }

    /// Single-qubit Pauli `kind` (`'X'`, `'Y'` or `'Z'`) on `qubit`.
    pub fn single(kind: char, qubit: usize, n_qubits: usize) -> Self {
        assert!(qubit < n_qubits);
        let bit = 1u32 << qubit;
        let (x, z) = match kind {
            'X' => (bit, 0),
            'Y' => (bit, bit),
            'Z' => (0, bit),
            other => panic!("unknown Pauli {other}"),
        };
        PauliString {
            x_mask: x,
            z_mask: z,
            phase: Phase::ONE,
            n_qubits,
        }
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn weight(&self) -> usize {
        (self.x_mask | self.z_mask).count_ones() as usize
    }

    fn y_count(&self) -> i64 {
        (self.x_mask & self.z_mask).count_ones() as i64
    }

    pub fn product(&self, other: &PauliString) -> PauliString {
        assert_eq!(self.n_qubits, other.n_qubits, "qubit counts differ");
        let x = self.x_mask ^ other.x_mask;
        let z = self.z_mask ^ other.z_mask;
        let swap = (self.z_mask & other.x_mask).count_ones() as i64;
        let y3 = (x & z).count_ones() as i64;
        let extra = Phase::i_pow(self.y_count() + other.y_count() - y3 + 2 * swap);
        PauliString {
            x_mask: x,
            z_mask: z,
            phase: self.phase * other.phase * extra,
            n_qubits: self.n_qubits,
        }
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let a = (self.x_mask & other.z_mask).count_ones();
        let b = (self.z_mask & other.x_mask).count_ones();
        (a + b).is_multiple_of(2)
    }

    /// `P|b> = amplitude * |b ^ x_mask>`; returns the amplitude.
    #[inline]
    pub fn action(&self, basis: usize) -> Complex64 {
        let sign = ((basis as u32) & self.z_mask).count_ones() as i64 * 2;
        (self.phase * Phase::i_pow(self.y_count() + sign)).to_complex()
    }

    pub fn dimension(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = self.dimension();
        let mut m = DMatrix::zeros(dim, dim);
        for b in 0..dim {
            m[(b ^ self.x_mask as usize, b)] = self.action(b);
        }
        m
    }

    /// `Tr(P^dagger A)` read off the sparse pattern of `P`.
    pub fn overlap(&self, a: &DMatrix<Complex64>) -> Complex64 {
        let dim = self.dimension();
        let mut acc = Complex64::new(0.0, 0.0);
        for b in 0..dim {
            acc += self.action(b).conj() * a[(b ^ self.x_mask as usize, b)];
        }
        acc
    }

    pub fn apply(&self, state: &DVector<Complex64>) -> DVector<Complex64> {
        let mut out = DVector::zeros(state.len());
        self.apply_add(state, Complex64::new(1.0, 0.0), &mut out);
        out
    }

    /// `out += coeff * P state`.
    pub fn apply_add(
        &self,
        state: &DVector<Complex64>,
        coeff: Complex64,
        out: &mut DVector<Complex64>,
    ) {
        debug_assert_eq!(state.len(), self.dimension());
        for b in 0..state.len() {
            let amp = state[b];
            if amp.re == 0.0 && amp.im == 0.0 {
                continue;
            }
            out[b ^ self.x_mask as usize] += coeff * self.action(b) * amp;
        }
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ", self.phase)?;
        for q in 0..self.n_qubits {
            let x = self.x_mask >> q & 1 == 1;
            let z = self.z_mask >> q & 1 == 1;
            f.write_str(match (x, z) {
                (false, false) => "I",
                (true, false) => "X",
                (false, true) => "Z",
                (true, true) => "Y",
            })?;
        }
        Ok(())
    }
}

/// Linear combination of Pauli strings acting on one register.
#[derive(Debug, Clone, Default)]
pub struct PauliSum {
    pub terms: Vec<(Complex64, PauliString)>,
}

impl PauliSum {
    pub fn push(&mut self, coeff: Complex64, p: PauliString) {
        self.terms.push((coeff, p));
    }

    pub fn apply(&self, state: &DVector<Complex64>) -> DVector<Complex64> {
        let mut out = DVector::zeros(state.len());
        for (c, p) in &self.terms {
            p.apply_add(state, *c, &mut out);
        }
        out
    }

    pub fn to_dense(&self, n_qubits: usize) -> DMatrix<Complex64> {
        let dim = 1 << n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for (c, p) in &self.terms {
            assert_eq!(p.n_qubits, n_qubits);
            for b in 0..dim {
                m[(b ^ p.x_mask as usize, b)] += c * p.action(b);
            }
        }
        m
    }
}

/// Interleaved Jordan-Wigner image of unit generator `index` (1-based) on `n_qubits`:
/// odd `index = 2k+1` maps to `Z^{⊗k} X_k`, even `index = 2k+2` maps to `Z^{⊗k} Y_k`.
///
/// In a two-sided register the left Majorana of flavour `j` is generator `2j-1` and
/// its right partner is `2j`, so both share qubit `j-1`.
pub fn jordan_wigner(index: usize, n_qubits: usize) -> Result<PauliString> {
    if index == 0 || index > 2 * n_qubits || n_qubits > 32 {
        return Err(Error::IndexOutOfRange {
            index,
            max: 2 * n_qubits,
        });
    }
    let k = (index - 1) / 2;
    let string = (1u32 << k) - 1;
    let bit = 1u32 << k;
    let z = if index.is_multiple_of(2) {
        string | bit
    } else {
        string
    };
    Ok(PauliString {
        x_mask: bit,
        z_mask: z,
        phase: Phase::ONE,
        n_qubits,
    })
}

/// Jordan-Wigner image of a unit-generator monomial, with generator `i` of the
/// monomial mapped to qubit-register generator `embed(i)`.
pub fn monomial_to_pauli(
    m: &Monomial,
    n_qubits: usize,
    embed: impl Fn(usize) -> usize,
) -> Result<PauliString> {
    let mut acc = PauliString::identity(n_qubits).with_phase(m.phase());
    for i in m.indices() {
        acc = acc.product(&jordan_wigner(embed(i), n_qubits)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_qubit_matrices() {
        let x = PauliString::single('X', 0, 1).to_dense();
        let y = PauliString::single('Y', 0, 1).to_dense();
        let z = PauliString::single('Z', 0, 1).to_dense();
        assert_eq!(x[(1, 0)], c(1.0, 0.0));
        assert_eq!(y[(1, 0)], c(0.0, 1.0));
        assert_eq!(y[(0, 1)], c(0.0, -1.0));
        assert_eq!(z[(1, 1)], c(-1.0, 0.0));
    }

    #[test]
    fn product_matches_dense() {
        let n = 3;
        let all: Vec<PauliString> = (0..64u32)
            .map(|k| PauliString {
                x_mask: k & 7,
                z_mask: k >> 3,
                phase: Phase::i_pow(k as i64),
                n_qubits: n,
            })
            .collect();
        for a in all.iter().step_by(5) {
            for b in all.iter().step_by(3) {
                let lhs = a.product(b).to_dense();
                let rhs = a.to_dense() * b.to_dense();
                assert!((lhs - rhs).norm() < 1e-12, "{a} * {b}");
                let comm = a.to_dense() * b.to_dense() - b.to_dense() * a.to_dense();
                assert_eq!(a.commutes_with(b), comm.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn first_generators() {
        let l1 = jordan_wigner(1, 7).unwrap();
        assert_eq!((l1.x_mask, l1.z_mask), (1, 0));
        let r1 = jordan_wigner(2, 7).unwrap();
        assert_eq!((r1.x_mask, r1.z_mask), (1, 1));
        let l3 = jordan_wigner(5, 7).unwrap();
        assert_eq!((l3.x_mask, l3.z_mask), (4, 3));
        assert!(jordan_wigner(15, 7).is_err());
        assert!(jordan_wigner(0, 7).is_err());
    }

    #[test]
    fn overlap_and_apply_agree_with_dense() {
        let p = jordan_wigner(5, 3).unwrap().with_phase(Phase::I);
        let d = p.to_dense();
        assert!((p.overlap(&d) - c(8.0, 0.0)).norm() < 1e-12);
        let v = DVector::from_fn(8, |i, _| c(i as f64, 1.0 - i as f64));
        assert!((p.apply(&v) - &d * &v).norm() < 1e-12);
    }
}
