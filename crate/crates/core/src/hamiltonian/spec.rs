use crate::error::{Error, Result};
use crate::majorana::{masks_commute, Monomial, Side};

/// One four-body coupling `coefficient * psi^i psi^j psi^k psi^l` with `i < j < k < l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coefficient: f64,
    pub support: [usize; 4],
}

impl Term {
    pub fn new(coefficient: f64, support: [usize; 4]) -> Self {
        Term {
            coefficient,
            support,
        }
    }

    /// Index bitmask, generator `i` at bit `i - 1`.
    pub fn mask(&self) -> u32 {
        self.support.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }

    pub fn monomial(&self, n_fermions: usize) -> Result<Monomial> {
        Monomial::new(&self.support, n_fermions)
    }
}

/// A sum of four-body Majorana terms on one copy of the system.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    terms: Vec<Term>,
    n_fermions: usize,
    side: Side,
}

impl HamiltonianSpec {
    pub fn new(terms: Vec<Term>, n_fermions: usize, side: Side) -> Result<Self> {
        if n_fermions > 16 {
            return Err(Error::IndexOutOfRange {
                index: n_fermions,
                max: 16,
            });
        }
        let mut seen = Vec::with_capacity(terms.len());
        for t in &terms {
            if !t.coefficient.is_finite() {
                return Err(Error::InvalidTerm(format!(
                    "non-finite coefficient {}",
                    t.coefficient
                )));
            }
            // validates range and strict ordering
            t.monomial(n_fermions)?;
            let m = t.mask();
            if seen.contains(&m) {
                return Err(Error::InvalidTerm(format!(
                    "duplicate support {:?}",
                    t.support
                )));
            }
            seen.push(m);
        }
        Ok(HamiltonianSpec {
            terms,
            n_fermions,
            side,
        })
    }

    pub fn empty(n_fermions: usize, side: Side) -> Self {
        HamiltonianSpec {
            terms: Vec::new(),
            n_fermions,
            side,
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn n_fermions(&self) -> usize {
        self.n_fermions
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn with_side(&self, side: Side) -> Self {
        HamiltonianSpec {
            side,
            ..self.clone()
        }
    }

    /// Same supports, every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        HamiltonianSpec {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.coefficient * factor, t.support))
                .collect(),
            ..self.clone()
        }
    }

    /// Union of the terms of `self` and `other`.
    pub fn combined(&self, other: &HamiltonianSpec) -> Result<Self> {
        if self.n_fermions != other.n_fermions {
            return Err(Error::GeneratorMismatch {
                left: self.n_fermions,
                right: other.n_fermions,
            });
        }
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        HamiltonianSpec::new(terms, self.n_fermions, self.side)
    }

    /// Fermions renamed by `perm`, where fermion `i` becomes `perm[i - 1]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n_fermions {
            return Err(Error::InvalidConfig(format!(
                "permutation of length {} for {} fermions",
                perm.len(),
                self.n_fermions
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut s = t.support.map(|i| perm[i - 1]);
                s.sort_unstable();
                Term::new(t.coefficient, s)
            })
            .collect();
        HamiltonianSpec::new(terms, self.n_fermions, self.side)
    }

    pub fn masks(&self) -> Vec<u32> {
        self.terms.iter().map(Term::mask).collect()
    }

    /// Whether every fermion appears in at least one term.
    pub fn touches_all(&self) -> bool {
        let all = self.masks().iter().fold(0, |a, m| a | m);
        all.count_ones() as usize == self.n_fermions
    }

    /// How many terms contain each fermion.
    pub fn occupancy(&self) -> Vec<usize> {
        let mut occ = vec![0; self.n_fermions];
        for t in &self.terms {
            for &i in &t.support {
                occ[i - 1] += 1;
            }
        }
        occ
    }

    /// Root mean square of the coefficients.
    pub fn rms_coefficient(&self) -> f64 {
        if self.terms.is_empty() {
            return 0.0;
        }
        let s: f64 = self.terms.iter().map(|t| t.coefficient.powi(2)).sum();
        (s / self.terms.len() as f64).sqrt()
    }
}

/// True iff every pair of terms commutes.
pub fn is_mutually_commuting(spec: &HamiltonianSpec) -> bool {
    let masks = spec.masks();
    masks
        .iter()
        .enumerate()
        .all(|(a, &ma)| masks[a + 1..].iter().all(|&mb| masks_commute(ma, mb)))
}

/// Normalisation of the left-right bilinear `V = c * i sum_j psi_L^j psi_R^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InteractionNorm {
    /// `c = 1 / (q N)` with `q = 4`.
    #[default]
    PerFlavorQ,
    /// `c = 1 / N`.
    PerFlavor,
    /// `c = 1`.
    None,
}

impl InteractionNorm {
    pub fn factor(self, n_fermions: usize) -> f64 {
        match self {
            InteractionNorm::PerFlavorQ => 1.0 / (4.0 * n_fermions as f64),
            InteractionNorm::PerFlavor => 1.0 / n_fermions as f64,
            InteractionNorm::None => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InteractionNorm::PerFlavorQ => "per-flavor-q",
            InteractionNorm::PerFlavor => "per-flavor",
            InteractionNorm::None => "none",
        }
    }
}

impl std::str::FromStr for InteractionNorm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-flavor-q" => Ok(InteractionNorm::PerFlavorQ),
            "per-flavor" => Ok(InteractionNorm::PerFlavor),
            "none" => Ok(InteractionNorm::None),
            other => Err(Error::InvalidConfig(format!(
                "unknown interaction normalisation {other}"
            ))),
        }
    }
}

/// `H_L + H_R + mu * V` on the doubled system.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledSpec {
    pub left: HamiltonianSpec,
    pub right: HamiltonianSpec,
    pub mu: f64,
    pub norm: InteractionNorm,
}

impl CoupledSpec {
    pub fn n_fermions(&self) -> usize {
        self.left.n_fermions()
    }

    /// Coefficient multiplying `i sum_j psi_L^j psi_R^j` in the full Hamiltonian.
    pub fn interaction_coefficient(&self) -> f64 {
        self.mu * self.norm.factor(self.n_fermions())
    }

    pub fn with_mu(&self, mu: f64) -> Self {
        CoupledSpec { mu, ..self.clone() }
    }
}
