use super::{jordan_wigner, monomial_to_pauli, Monomial, PauliString};
use crate::dynamics::DenseOperator;
use crate::error::{Error, Result};
use std::f64::consts::FRAC_1_SQRT_2;

/// Majorana normalisation used when operators become matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Normalization {
    /// `{psi^i, psi^j} = delta_ij`, so `psi^2 = 1/2`.
    #[default]
    Half,
    /// `{psi^i, psi^j} = 2 delta_ij`, so `psi^2 = 1`.
    Unit,
}

impl Normalization {
    /// Factor between a physical Majorana and its unit-square Pauli image.
    pub fn generator_scale(self) -> f64 {
        match self {
            Normalization::Half => FRAC_1_SQRT_2,
            Normalization::Unit => 1.0,
        }
    }

    /// Value of `psi^2`.
    pub fn square(self) -> f64 {
        self.generator_scale().powi(2)
    }

    pub fn name(self) -> &'static str {
        match self {
            Normalization::Half => "half",
            Normalization::Unit => "unit",
        }
    }
}

impl std::str::FromStr for Normalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "half" => Ok(Normalization::Half),
            "unit" => Ok(Normalization::Unit),
            other => Err(Error::InvalidConfig(format!(
                "unknown normalization {other}"
            ))),
        }
    }
}

/// Which copy of the fermions an operator lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    /// A lone system with no partner.
    Single,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Single => "single",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "single" => Ok(Side::Single),
            other => Err(Error::InvalidConfig(format!("unknown side {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// `n` Majoranas on `ceil(n/2)` qubits; an odd count is padded with a spectator generator.
    SingleSided,
    /// `n` left and `n` right Majoranas interleaved on `n` qubits.
    TwoSided,
}

/// Qubit register hosting Majorana generators through the Jordan-Wigner map,
/// possibly with trailing auxiliary qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Register {
    pub layout: Layout,
    pub n_fermions: usize,
    pub n_qubits: usize,
    pub normalization: Normalization,
}

impl Register {
    pub fn single_sided(n_fermions: usize, normalization: Normalization) -> Self {
        Register {
            layout: Layout::SingleSided,
            n_fermions,
            n_qubits: n_fermions.div_ceil(2),
            normalization,
        }
    }

    pub fn two_sided(n_fermions: usize, normalization: Normalization) -> Self {
        Register {
            layout: Layout::TwoSided,
            n_fermions,
            n_qubits: n_fermions,
            normalization,
        }
    }

    /// Same register with `extra` auxiliary qubits appended above the fermion qubits.
    pub fn with_auxiliary(mut self, extra: usize) -> Self {
        self.n_qubits += extra;
        self
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// Qubits carrying fermions.
    pub fn fermion_qubits(&self) -> usize {
        match self.layout {
            Layout::SingleSided => self.n_fermions.div_ceil(2),
            Layout::TwoSided => self.n_fermions,
        }
    }

    /// Jordan-Wigner generator index hosting fermion `j` (1-based) on `side`.
    /// `Single` on a two-sided register is read as `Left`.
    pub fn generator_index(&self, side: Side, j: usize) -> Result<usize> {
        if j == 0 || j > self.n_fermions {
            return Err(Error::IndexOutOfRange {
                index: j,
                max: self.n_fermions,
            });
        }
        match (self.layout, side) {
            (Layout::SingleSided, Side::Single) | (Layout::SingleSided, Side::Left) => Ok(j),
            (Layout::SingleSided, Side::Right) => Err(Error::InvalidConfig(
                "right-side operator on a single-sided register".into(),
            )),
            (Layout::TwoSided, Side::Left) | (Layout::TwoSided, Side::Single) => Ok(2 * j - 1),
            (Layout::TwoSided, Side::Right) => Ok(2 * j),
        }
    }

    /// Unit-square Pauli image of fermion `j` on `side`.
    pub fn majorana_pauli(&self, side: Side, j: usize) -> Result<PauliString> {
        jordan_wigner(self.generator_index(side, j)?, self.n_qubits)
    }

    /// Physical Majorana `psi_side^j` as a matrix.
    pub fn majorana(&self, side: Side, j: usize) -> Result<DenseOperator> {
        let p = self.majorana_pauli(side, j)?;
        Ok(DenseOperator::from_matrix(p.to_dense())
            .scale_real(self.normalization.generator_scale()))
    }

    /// Pauli image of a unit-generator monomial over the fermions of `side`.
    pub fn monomial_pauli(&self, m: &Monomial, side: Side) -> Result<PauliString> {
        if m.n_generators() != self.n_fermions {
            return Err(Error::GeneratorMismatch {
                left: m.n_generators(),
                right: self.n_fermions,
            });
        }
        // generator_index cannot fail for indices inside the monomial
        let layout = self.layout;
        monomial_to_pauli(m, self.n_qubits, |i| match (layout, side) {
            (Layout::SingleSided, _) => i,
            (Layout::TwoSided, Side::Right) => 2 * i,
            (Layout::TwoSided, _) => 2 * i - 1,
        })
    }

    /// Physical monomial `psi^P` (normalised generators) as a matrix.
    pub fn monomial(&self, m: &Monomial, side: Side) -> Result<DenseOperator> {
        let p = self.monomial_pauli(m, side)?;
        let scale = self.normalization.generator_scale().powi(m.size() as i32);
        Ok(DenseOperator::from_matrix(p.to_dense()).scale_real(scale))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::C64;

    #[test]
    fn two_sided_generators_anticommute() {
        let reg = Register::two_sided(7, Normalization::Half);
        let mut ops = Vec::new();
        for j in 1..=7 {
            ops.push(reg.majorana(Side::Left, j).unwrap());
            ops.push(reg.majorana(Side::Right, j).unwrap());
        }
        let eye = DenseOperator::identity(reg.dim());
        for (a, oa) in ops.iter().enumerate() {
            for (b, ob) in ops.iter().enumerate() {
                let ac = oa.anticommutator(ob).unwrap();
                let expected = if a == b {
                    eye.clone()
                } else {
                    DenseOperator::zeros(reg.dim())
                };
                assert!((&ac - &expected).max_abs() < 1e-12, "pair {a},{b}");
            }
        }
    }

    #[test]
    fn first_left_and_right_are_x_and_y() {
        let reg = Register::two_sided(7, Normalization::Half);
        let l1 = reg.majorana(Side::Left, 1).unwrap();
        let r1 = reg.majorana(Side::Right, 1).unwrap();
        let s = FRAC_1_SQRT_2;
        assert!((l1.matrix()[(1, 0)] - C64::new(s, 0.0)).norm() < 1e-15);
        assert!((r1.matrix()[(1, 0)] - C64::new(0.0, s)).norm() < 1e-15);
        // identity on the other six qubits
        assert!((l1.matrix()[(3, 2)] - C64::new(s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn padded_single_sided_register() {
        let reg = Register::single_sided(7, Normalization::Half);
        assert_eq!(reg.n_qubits, 4);
        assert!(reg.majorana(Side::Single, 8).is_err());
        assert!(reg.majorana(Side::Right, 1).is_err());
    }
}
