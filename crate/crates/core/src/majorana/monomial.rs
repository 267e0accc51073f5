use super::Phase;
use crate::error::{Error, Result};

/// Largest generator count a monomial bitmask can hold.
pub const MAX_GENERATORS: usize = 32;

/// A signed product of distinct Majorana generators, `phase * g_{i1} g_{i2} ... g_{ik}`
/// with `i1 < i2 < ... < ik`.
///
/// The algebra is computed with unit generators (`g_i^2 = 1`); the physical
/// normalisation is applied when an operator is turned into a matrix.
/// Generator indices are 1-based; generator `i` occupies bit `i - 1` of the mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    mask: u32,
    phase: Phase,
    n_generators: u8,
}

impl Monomial {
    pub fn identity(n_generators: usize) -> Self {
        assert!(n_generators <= MAX_GENERATORS);
        Monomial {
            mask: 0,
            phase: Phase::ONE,
            n_generators: n_generators as u8,
        }
    }

    /// Monomial from a strictly increasing list of 1-based indices.
    pub fn new(indices: &[usize], n_generators: usize) -> Result<Self> {
        if n_generators > MAX_GENERATORS {
            return Err(Error::IndexOutOfRange {
                index: n_generators,
                max: MAX_GENERATORS,
            });
        }
        let mut mask = 0u32;
        let mut last = 0usize;
        for &i in indices {
            if i == 0 || i > n_generators {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    max: n_generators,
                });
            }
            if i <= last {
                return Err(Error::InvalidTerm(format!(
                    "indices must be strictly increasing: {indices:?}"
                )));
            }
            last = i;
            mask |= 1 << (i - 1);
        }
        Ok(Monomial {
            mask,
            phase: Phase::ONE,
            n_generators: n_generators as u8,
        })
    }

    /// Single generator `g_index`.
    pub fn generator(index: usize, n_generators: usize) -> Result<Self> {
        Self::new(&[index], n_generators)
    }

    pub fn from_mask(mask: u32, n_generators: usize) -> Self {
        assert!(n_generators <= MAX_GENERATORS);
        debug_assert!(n_generators == 32 || mask >> n_generators == 0);
        Monomial {
            mask,
            phase: Phase::ONE,
            n_generators: n_generators as u8,
        }
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators as usize
    }

    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.mask == 0
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..MAX_GENERATORS)
            .filter(|b| self.mask >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }

    /// Same index set with phase reset to `+1`.
    pub fn unsigned(&self) -> Self {
        self.with_phase(Phase::ONE)
    }

    /// Hermitian conjugate. Reversing `k` anticommuting generators costs `(-1)^{k(k-1)/2}`.
    pub fn adjoint(&self) -> Self {
        let k = self.size() as i64;
        let reversal = Phase::sign((k * (k - 1) / 2) % 2 == 1);
        self.with_phase(self.phase.conj() * reversal)
    }

    fn check_same(&self, other: &Monomial) -> Result<()> {
        if self.n_generators != other.n_generators {
            return Err(Error::GeneratorMismatch {
                left: self.n_generators(),
                right: other.n_generators(),
            });
        }
        Ok(())
    }

    /// Product `self * other`, reordered into increasing form.
    pub fn product(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same(other)?;
        Ok(self.product_unchecked(other))
    }

    pub(crate) fn product_unchecked(&self, other: &Monomial) -> Monomial {
        let negative = reorder_parity(self.mask, other.mask);
        Monomial {
            mask: self.mask ^ other.mask,
            phase: self.phase * other.phase * Phase::sign(negative),
            n_generators: self.n_generators,
        }
    }

    /// Whether `self * other == other * self`.
    pub fn commutes_with(&self, other: &Monomial) -> Result<bool> {
        self.check_same(other)?;
        Ok(masks_commute(self.mask, other.mask))
    }
}

/// Parity of the transpositions needed to sort the concatenation `a ++ b`:
/// the number of pairs `(i in a, j in b)` with `i > j`, mod 2.
pub(crate) fn reorder_parity(a: u32, b: u32) -> bool {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if j >= 31 {
            0
        } else {
            a & (u32::MAX << (j + 1))
        };
        swaps += above.count_ones();
    }
    swaps % 2 == 1
}

/// Two monomials of sizes `s_a`, `s_b` with overlap `k` commute iff `s_a s_b - k` is even.
pub fn masks_commute(a: u32, b: u32) -> bool {
    let sa = a.count_ones();
    let sb = b.count_ones();
    let k = (a & b).count_ones();
    (sa * sb + k).is_multiple_of(2)
}

/// Product `a * b`, panicking on mismatched generator counts.
pub fn monomial_product(a: &Monomial, b: &Monomial) -> Monomial {
    a.product(b)
        .expect("monomials over different generator counts")
}

/// Whether `a` and `b` commute, panicking on mismatched generator counts.
pub fn monomials_commute(a: &Monomial, b: &Monomial) -> bool {
    a.commutes_with(b)
        .expect("monomials over different generator counts")
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.phase)?;
        if self.is_identity() {
            return write!(f, " I");
        }
        for i in self.indices() {
            write!(f, " g{i}")?;
        }
        Ok(())
    }
}
