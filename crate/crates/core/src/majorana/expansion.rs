use super::{Monomial, Normalization, Register, Side};
use crate::dynamics::{DenseOperator, C64};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use std::collections::BTreeMap;

/// Truncation threshold used for support counting.
pub const DEFAULT_THRESHOLD: f64 = 1e-8;

/// Operator written as `sum_P c_P g^P` over unit-generator monomials `g^P`
/// (plain increasing products, phase `+1`), keyed by index bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorExpansion {
    terms: BTreeMap<u32, C64>,
    n_generators: usize,
}

impl OperatorExpansion {
    pub fn new(n_generators: usize) -> Self {
        OperatorExpansion {
            terms: BTreeMap::new(),
            n_generators,
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, C64)>, n_generators: usize) -> Self {
        let mut e = Self::new(n_generators);
        for (mask, c) in terms {
            *e.terms.entry(mask).or_insert(C64::new(0.0, 0.0)) += c;
        }
        e
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn amplitude(&self, m: &Monomial) -> C64 {
        let c = self.terms.get(&m.mask()).copied().unwrap_or_default();
        // g^P with phase s equals s * (unsigned g^P), so its coefficient carries conj(s)
        c * m.phase().conj().to_complex()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Monomial, C64)> + '_ {
        self.terms
            .iter()
            .map(move |(&mask, &c)| (Monomial::from_mask(mask, self.n_generators), c))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum()
    }

    /// Rescaled so that `sum |c_P|^2 = 1`. An empty or zero expansion is returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return self.clone();
        }
        OperatorExpansion {
            terms: self.terms.iter().map(|(&k, &c)| (k, c / n)).collect(),
            n_generators: self.n_generators,
        }
    }

    /// Drops amplitudes with modulus at or below `threshold`.
    pub fn truncated(&self, threshold: f64) -> Self {
        OperatorExpansion {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() > threshold)
                .map(|(&k, &c)| (k, c))
                .collect(),
            n_generators: self.n_generators,
        }
    }

    /// Index sets with `|c_P| > threshold`.
    pub fn support(&self, threshold: f64) -> Vec<u32> {
        self.terms
            .iter()
            .filter(|(_, c)| c.norm() > threshold)
            .map(|(&k, _)| k)
            .collect()
    }

    /// Number of monomials above `threshold` and the largest size among them.
    pub fn support_profile(&self, threshold: f64) -> (usize, usize) {
        support_profile(self, threshold)
    }

    /// `(sum_{|P|=l} |c_P|^2, sum_{|P|=l} c_P^2)` for every size `l = 0..=n`.
    pub fn size_sums(&self) -> (Vec<f64>, Vec<C64>) {
        let mut p = vec![0.0; self.n_generators + 1];
        let mut q = vec![C64::new(0.0, 0.0); self.n_generators + 1];
        for (&mask, &c) in &self.terms {
            let l = mask.count_ones() as usize;
            p[l] += c.norm_sqr();
            q[l] += c * c;
        }
        (p, q)
    }

    /// Matrix `sum_P c_P g^P` on `register`, with unit-square generators.
    pub fn to_dense(&self, register: &Register, side: Side) -> Result<DenseOperator> {
        let unit = Register {
            normalization: Normalization::Unit,
            ..*register
        };
        let dim = unit.dim();
        let mut m = DMatrix::<C64>::zeros(dim, dim);
        for (mono, c) in self.iter() {
            let p = unit.monomial_pauli(&mono, side)?;
            for b in 0..dim {
                m[(b ^ p.x_mask as usize, b)] += c * p.action(b);
            }
        }
        Ok(DenseOperator::from_matrix(m))
    }
}

/// Number of monomials with `|c_P| > threshold` and their largest size.
pub fn support_profile(exp: &OperatorExpansion, threshold: f64) -> (usize, usize) {
    exp.terms
        .iter()
        .filter(|(_, c)| c.norm() > threshold)
        .fold((0, 0), |(n, s), (mask, _)| {
            (n + 1, s.max(mask.count_ones() as usize))
        })
}

/// Expansion of an operator on the single-sided register of `n_generators`
/// fermions, `c_P = Tr(g^P^dagger op) / dim`. Entries at or below `threshold` are dropped.
pub fn expand_in_monomials(
    op: &DenseOperator,
    n_generators: usize,
    threshold: f64,
) -> Result<OperatorExpansion> {
    let reg = Register::single_sided(n_generators, Normalization::Unit);
    expand_on_register(op, &reg, Side::Single, threshold)
}

/// Expansion over the monomials of one side of `register`.
pub fn expand_on_register(
    op: &DenseOperator,
    register: &Register,
    side: Side,
    threshold: f64,
) -> Result<OperatorExpansion> {
    op.check_dim(register.dim())?;
    let n = register.n_fermions;
    if n > 20 {
        return Err(Error::BudgetExceeded {
            n_fermions: n,
            n_terms: 0,
        });
    }
    let dim = register.dim() as f64;
    let mut terms = BTreeMap::new();
    for mask in 0..(1u32 << n) {
        let p = register.monomial_pauli(&Monomial::from_mask(mask, n), side)?;
        let c = p.overlap(op.matrix()) / dim;
        if c.norm() > threshold {
            terms.insert(mask, c);
        }
    }
    Ok(OperatorExpansion {
        terms,
        n_generators: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_generator_expands_to_itself() {
        let reg = Register::single_sided(7, Normalization::Half);
        let psi1 = reg.majorana(Side::Single, 1).unwrap();
        let e = expand_in_monomials(&psi1, 7, DEFAULT_THRESHOLD)
            .unwrap()
            .normalized();
        assert_eq!(e.len(), 1);
        let g1 = Monomial::generator(1, 7).unwrap();
        assert!((e.amplitude(&g1) - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert_eq!(e.support_profile(DEFAULT_THRESHOLD), (1, 1));
    }

    #[test]
    fn signed_monomial_amplitude() {
        let e = OperatorExpansion::from_terms([(0b11, C64::new(2.0, 0.0))], 7);
        let m = Monomial::new(&[1, 2], 7)
            .unwrap()
            .with_phase(super::super::Phase::I);
        assert!((e.amplitude(&m) - C64::new(0.0, -2.0)).norm() < 1e-15);
    }

    #[test]
    fn size_sums_match_terms() {
        let e = OperatorExpansion::from_terms(
            [(0b1, C64::new(0.6, 0.0)), (0b111, C64::new(0.0, 0.8))],
            7,
        );
        let (p, q) = e.size_sums();
        assert!((p[1] - 0.36).abs() < 1e-15);
        assert!((p[3] - 0.64).abs() < 1e-15);
        assert!((q[3] + C64::new(0.64, 0.0)).norm() < 1e-15);
    }
}
