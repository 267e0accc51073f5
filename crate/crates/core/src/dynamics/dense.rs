use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

pub type C64 = Complex64;

/// Complex square matrix on a qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator(DMatrix<C64>);

impl DenseOperator {
    pub fn from_matrix(m: DMatrix<C64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "operator must be square");
        DenseOperator(m)
    }

    pub fn zeros(dim: usize) -> Self {
        DenseOperator(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        DenseOperator(DMatrix::identity(dim, dim))
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        DenseOperator(DMatrix::from_diagonal(&DVector::from_row_slice(diag)))
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn adjoint(&self) -> Self {
        DenseOperator(self.0.adjoint())
    }

    pub fn scale(&self, c: C64) -> Self {
        DenseOperator(&self.0 * c)
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn commutator(&self, other: &DenseOperator) -> Result<DenseOperator> {
        self.check_dim(other.dim())?;
        Ok(DenseOperator(&self.0 * &other.0 - &other.0 * &self.0))
    }

    pub fn anticommutator(&self, other: &DenseOperator) -> Result<DenseOperator> {
        self.check_dim(other.dim())?;
        Ok(DenseOperator(&self.0 * &other.0 + &other.0 * &self.0))
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: dim,
            });
        }
        Ok(())
    }

    /// Largest deviation from Hermiticity, entrywise.
    pub fn hermiticity_error(&self) -> f64 {
        (&self.0 - self.0.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// Largest entry of `U^dagger U - 1`.
    pub fn unitarity_error(&self) -> f64 {
        let eye = DMatrix::<C64>::identity(self.dim(), self.dim());
        (self.0.adjoint() * &self.0 - eye)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    /// `self ⊗ other` with `self` on the high (more significant) qubits.
    pub fn kron(&self, other: &DenseOperator) -> DenseOperator {
        DenseOperator(self.0.kronecker(&other.0))
    }

    pub fn apply(&self, v: &DVector<C64>) -> Result<DVector<C64>> {
        self.check_dim(v.len())?;
        Ok(&self.0 * v)
    }

    /// Hermitian eigendecomposition. The matrix is symmetrised first.
    pub fn eigen(&self) -> Spectrum {
        Spectrum::of(self)
    }
}

impl Mul for &DenseOperator {
    type Output = DenseOperator;
    fn mul(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator(&self.0 * &rhs.0)
    }
}

impl Add for &DenseOperator {
    type Output = DenseOperator;
    fn add(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator(&self.0 + &rhs.0)
    }
}

impl Sub for &DenseOperator {
    type Output = DenseOperator;
    fn sub(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator(&self.0 - &rhs.0)
    }
}

/// Eigendecomposition `H = V diag(E) V^dagger` of a Hermitian operator.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub energies: Vec<f64>,
    /// Eigenvectors as columns, in the order of `energies` (ascending).
    pub vectors: DMatrix<C64>,
}

impl Spectrum {
    pub fn of(h: &DenseOperator) -> Spectrum {
        let sym = (h.matrix() + h.matrix().adjoint()) * C64::new(0.5, 0.0);
        let n = sym.nrows();
        let eig = sym.symmetric_eigen();
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let energies = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = DMatrix::from_fn(n, order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
        Spectrum { energies, vectors }
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    pub fn ground_state(&self) -> DVector<C64> {
        self.vectors.column(0).into_owned()
    }

    /// `f(H) = V diag(f(E)) V^dagger`.
    pub fn function(&self, f: impl Fn(f64) -> C64) -> DenseOperator {
        let mut scaled = self.vectors.clone();
        for (c, &e) in self.energies.iter().enumerate() {
            let w = f(e);
            for r in 0..scaled.nrows() {
                scaled[(r, c)] *= w;
            }
        }
        DenseOperator(scaled * self.vectors.adjoint())
    }

    /// `exp(-i H t)`.
    pub fn propagator(&self, t: f64) -> DenseOperator {
        self.function(|e| C64::new(0.0, -e * t).exp())
    }

    /// `exp(-s H)` for real `s`, shifted by the ground energy to avoid overflow.
    /// Returns the operator and the shift `E0` so that the true value is `exp(-s E0) * op`.
    pub fn boltzmann(&self, s: f64) -> (DenseOperator, f64) {
        let e0 = if s >= 0.0 {
            self.ground_energy()
        } else {
            *self.energies.last().unwrap()
        };
        (self.function(|e| C64::new((-s * (e - e0)).exp(), 0.0)), e0)
    }

    pub fn evolve(&self, v: &DVector<C64>, t: f64) -> DVector<C64> {
        let coeffs = self.vectors.adjoint() * v;
        let phased = DVector::from_fn(coeffs.len(), |i, _| {
            coeffs[i] * C64::new(0.0, -self.energies[i] * t).exp()
        });
        &self.vectors * phased
    }

    /// `exp(iHt) op exp(-iHt)`.
    pub fn heisenberg(&self, op: &DenseOperator, t: f64) -> DenseOperator {
        let u = self.propagator(t);
        DenseOperator(u.0.adjoint() * &op.0 * &u.0)
    }

    /// Operator expressed in the eigenbasis, `V^dagger op V`.
    pub fn to_eigenbasis(&self, op: &DenseOperator) -> DMatrix<C64> {
        self.vectors.adjoint() * op.matrix() * &self.vectors
    }
}
