use super::{DenseOperator, C64};
use crate::error::{Error, Result};
use crate::majorana::PauliSum;
use nalgebra::{DMatrix, DVector};

/// Role of one qubit in a register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QubitRole {
    /// Carries the left and right Majoranas of fermion `j`.
    Fermion(usize),
    Reference,
    Injection,
    Readout,
}

/// Pure state on a labelled qubit register, little-endian basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<C64>,
    labels: Vec<QubitRole>,
}

impl StateVector {
    pub fn new(amplitudes: DVector<C64>, labels: Vec<QubitRole>) -> Result<Self> {
        if amplitudes.len() != 1 << labels.len() {
            return Err(Error::DimensionMismatch {
                expected: 1 << labels.len(),
                found: amplitudes.len(),
            });
        }
        Ok(StateVector { amplitudes, labels })
    }

    /// Computational basis state `|index>`.
    pub fn basis(index: usize, labels: Vec<QubitRole>) -> Result<Self> {
        let dim = 1usize << labels.len();
        if index >= dim {
            return Err(Error::IndexOutOfRange {
                index,
                max: dim - 1,
            });
        }
        let mut v = DVector::zeros(dim);
        v[index] = C64::new(1.0, 0.0);
        Ok(StateVector {
            amplitudes: v,
            labels,
        })
    }

    /// Labels `Fermion(1..=n)` for a two-sided register of `n` fermions.
    pub fn fermion_labels(n: usize) -> Vec<QubitRole> {
        (1..=n).map(QubitRole::Fermion).collect()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn labels(&self) -> &[QubitRole] {
        &self.labels
    }

    pub fn n_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> Self {
        StateVector {
            amplitudes: &self.amplitudes / C64::new(self.norm(), 0.0),
            labels: self.labels.clone(),
        }
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Position of the first qubit with `role`.
    pub fn qubit_of(&self, role: QubitRole) -> Option<usize> {
        self.labels.iter().position(|&r| r == role)
    }

    /// `self ⊗ other`, with `other` placed on the higher qubits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let dim = self.dim() * other.dim();
        let amplitudes = DVector::from_fn(dim, |i, _| {
            self.amplitudes[i % self.dim()] * other.amplitudes[i / self.dim()]
        });
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        StateVector { amplitudes, labels }
    }

    /// Full-register operator.
    pub fn apply(&self, op: &DenseOperator) -> Result<StateVector> {
        Ok(StateVector {
            amplitudes: op.apply(&self.amplitudes)?,
            labels: self.labels.clone(),
        })
    }

    pub fn apply_pauli_sum(&self, op: &PauliSum) -> StateVector {
        StateVector {
            amplitudes: op.apply(&self.amplitudes),
            labels: self.labels.clone(),
        }
    }

    /// Multiplies amplitude `b` by `diag[b]`.
    pub fn apply_diagonal(&self, diag: &[C64]) -> Result<StateVector> {
        if diag.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: diag.len(),
            });
        }
        Ok(StateVector {
            amplitudes: DVector::from_fn(self.dim(), |i, _| self.amplitudes[i] * diag[i]),
            labels: self.labels.clone(),
        })
    }

    /// Applies `op` (dimension `2^k`) to the `k` lowest qubits.
    pub fn apply_low(&self, op: &DMatrix<C64>) -> Result<StateVector> {
        let low = op.nrows();
        if low == 0 || !self.dim().is_multiple_of(low) || !low.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: low,
            });
        }
        let block = DMatrix::from_column_slice(low, self.dim() / low, self.amplitudes.as_slice());
        let out = op * block;
        Ok(StateVector {
            amplitudes: DVector::from_column_slice(out.as_slice()),
            labels: self.labels.clone(),
        })
    }

    /// Applies `op` (dimension `2^k`) to `qubits`, where `qubits[i]` is bit `i` of the
    /// operator's local index.
    pub fn apply_on(&self, op: &DMatrix<C64>, qubits: &[usize]) -> Result<StateVector> {
        check_qubits(qubits, self.n_qubits())?;
        let k = qubits.len();
        if op.nrows() != 1 << k || op.ncols() != 1 << k {
            return Err(Error::DimensionMismatch {
                expected: 1 << k,
                found: op.nrows(),
            });
        }
        let sel: usize = qubits.iter().map(|&q| 1usize << q).sum();
        let scatter = |local: usize| -> usize {
            qubits
                .iter()
                .enumerate()
                .filter(|(i, _)| local >> i & 1 == 1)
                .map(|(_, &q)| 1usize << q)
                .sum()
        };
        let offsets: Vec<usize> = (0..1 << k).map(scatter).collect();
        let mut out = DVector::zeros(self.dim());
        let mut local_in = vec![C64::new(0.0, 0.0); 1 << k];
        for base in 0..self.dim() {
            if base & sel != 0 {
                continue;
            }
            for (l, &o) in offsets.iter().enumerate() {
                local_in[l] = self.amplitudes[base | o];
            }
            for (r, &o) in offsets.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for (c, v) in local_in.iter().enumerate() {
                    acc += op[(r, c)] * v;
                }
                out[base | o] = acc;
            }
        }
        Ok(StateVector {
            amplitudes: out,
            labels: self.labels.clone(),
        })
    }

    /// Reduced density matrix on `qubits`; `qubits[i]` becomes bit `i` of the local index.
    pub fn reduced_density_matrix(&self, qubits: &[usize]) -> Result<DMatrix<C64>> {
        check_qubits(qubits, self.n_qubits())?;
        let k = qubits.len();
        let sel: usize = qubits.iter().map(|&q| 1usize << q).sum();
        let offsets: Vec<usize> = (0..1usize << k)
            .map(|l| {
                qubits
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| l >> i & 1 == 1)
                    .map(|(_, &q)| 1usize << q)
                    .sum()
            })
            .collect();
        let mut rho = DMatrix::zeros(1 << k, 1 << k);
        for base in 0..self.dim() {
            if base & sel != 0 {
                continue;
            }
            for (r, &orow) in offsets.iter().enumerate() {
                let a = self.amplitudes[base | orow];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for (c, &ocol) in offsets.iter().enumerate() {
                    rho[(r, c)] += a * self.amplitudes[base | ocol].conj();
                }
            }
        }
        Ok(rho)
    }
}

pub(crate) fn check_qubits(qubits: &[usize], n_qubits: usize) -> Result<()> {
    let mut seen = 0usize;
    for &q in qubits {
        if q >= n_qubits {
            return Err(Error::IndexOutOfRange {
                index: q,
                max: n_qubits.saturating_sub(1),
            });
        }
        if seen >> q & 1 == 1 {
            return Err(Error::InvalidQubitSet);
        }
        seen |= 1 << q;
    }
    Ok(())
}
