//! Reference constructions built from explicit Kronecker products, independent of the
//! library's bitmask arithmetic.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64 as C;

pub type M = DMatrix<C>;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn pauli(kind: char) -> M {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    match kind {
        'I' => M::from_row_slice(2, 2, &[o, z, z, o]),
        'X' => M::from_row_slice(2, 2, &[z, o, o, z]),
        'Y' => M::from_row_slice(2, 2, &[z, c(0.0, -1.0), c(0.0, 1.0), z]),
        'Z' => M::from_row_slice(2, 2, &[o, z, z, -o]),
        _ => panic!("bad pauli {kind}"),
    }
}

/// Kronecker product with qubit 0 as the least significant factor.
pub fn kron_string(kinds: &[char]) -> M {
    kinds
        .iter()
        .rev()
        .fold(M::identity(1, 1), |acc, &k| acc.kronecker(&pauli(k)))
}

/// Unit Majorana generator `g` (1-based) on `n_qubits`: `Z...Z X` for odd `g`,
/// `Z...Z Y` for even `g`, on qubit `(g - 1) / 2`.
pub fn generator(g: usize, n_qubits: usize) -> M {
    let q = (g - 1) / 2;
    let kinds: Vec<char> = (0..n_qubits)
        .map(|k| match k.cmp(&q) {
            std::cmp::Ordering::Less => 'Z',
            std::cmp::Ordering::Equal => {
                if g % 2 == 1 {
                    'X'
                } else {
                    'Y'
                }
            }
            std::cmp::Ordering::Greater => 'I',
        })
        .collect();
    kron_string(&kinds)
}

/// Ordered product of unit generators in `mask`, times `i^phase`.
pub fn monomial_matrix(mask: u32, phase: u8, n_qubits: usize) -> M {
    let dim = 1 << n_qubits;
    let mut m = M::identity(dim, dim);
    for g in 1..=2 * n_qubits {
        if mask >> (g - 1) & 1 == 1 {
            m *= generator(g, n_qubits);
        }
    }
    m * c(0.0, 1.0).powu(phase as u32)
}

pub fn max_abs(m: &M) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `e^{-i h t}` for Hermitian `h` via its eigendecomposition.
pub fn propagator(h: &M, t: f64) -> M {
    function(h, |e| c(0.0, -e * t).exp())
}

pub fn function(h: &M, f: impl Fn(f64) -> C) -> M {
    let sym = (h + h.adjoint()) * c(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let d = nalgebra::DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&e| f(e)),
    );
    &eig.eigenvectors * M::from_diagonal(&d) * eig.eigenvectors.adjoint()
}

/// Single-copy Hamiltonian of `spec` with generators scaled by `scale`.
pub fn single_hamiltonian(spec: &wormlab_core::HamiltonianSpec, scale: f64) -> M {
    let nq = spec.n_fermions().div_ceil(2);
    let dim = 1 << nq;
    let mut h = M::zeros(dim, dim);
    for t in spec.terms() {
        let mut p = M::identity(dim, dim);
        for &i in &t.support {
            p *= generator(i, nq) * c(scale, 0.0);
        }
        h += p * c(t.coefficient, 0.0);
    }
    h
}
