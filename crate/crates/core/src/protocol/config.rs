use crate::dynamics::FloquetSchedule;
use crate::error::{Error, Result};
use crate::hamiltonian::{learned_hamiltonian, perturbation, HamiltonianSpec, InteractionNorm};
use crate::majorana::Normalization;

/// How the two sides are evolved and coupled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProtocolMode {
    /// Independent left and right evolution with an instantaneous pulse `e^{i mu V}`.
    TrotterSingleStep,
    /// The pulse is replaced by evolution under `H_L + H_R - (mu / window) V` for `window`.
    ExactCoupled { window: f64 },
    /// Left and right evolution alternate between `H0` and `H1` per the Floquet schedule.
    Floquet,
}

impl ProtocolMode {
    pub fn name(&self) -> &'static str {
        match self {
            ProtocolMode::TrotterSingleStep => "trotter_single_step",
            ProtocolMode::ExactCoupled { .. } => "exact_coupled",
            ProtocolMode::Floquet => "floquet",
        }
    }
}

/// Parameters of one teleportation run.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolConfig {
    pub beta: f64,
    /// Insertion lead time.
    pub t0: f64,
    /// Readout time after the pulse.
    pub t1: f64,
    pub mu: f64,
    pub inject_pair: (usize, usize),
    pub readout_pair: (usize, usize),
    pub mode: ProtocolMode,
    pub floquet: FloquetSchedule,
    /// Hamiltonian whose thermofield double is prepared.
    pub tfd_hamiltonian: HamiltonianSpec,
    /// Evolution Hamiltonian (`H0` in Floquet mode).
    pub hamiltonian: HamiltonianSpec,
    /// `H1` in Floquet mode.
    pub floquet_perturbation: HamiltonianSpec,
    pub norm: InteractionNorm,
    pub normalization: Normalization,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        ProtocolConfig {
            beta: 4.0,
            t0: 2.8,
            t1: 2.8,
            mu: -12.0,
            inject_pair: (1, 2),
            readout_pair: (1, 2),
            mode: ProtocolMode::TrotterSingleStep,
            floquet: FloquetSchedule::default(),
            tfd_hamiltonian: learned_hamiltonian(),
            hamiltonian: learned_hamiltonian(),
            floquet_perturbation: perturbation(),
            norm: InteractionNorm::default(),
            normalization: Normalization::Half,
        }
    }
}

impl ProtocolConfig {
    pub fn n_fermions(&self) -> usize {
        self.tfd_hamiltonian.n_fermions()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta >= 0.0) {
            return Err(Error::NegativeBeta(self.beta));
        }
        for t in [self.t0, self.t1] {
            if !(t >= 0.0) {
                return Err(Error::NegativeTime(t));
            }
        }
        let n = self.n_fermions();
        if n + 3 > 16 {
            return Err(Error::InvalidConfig(format!(
                "{n} fermions plus three auxiliary qubits exceed the register budget"
            )));
        }
        for h in [&self.hamiltonian, &self.floquet_perturbation] {
            if h.n_fermions() != n {
                return Err(Error::GeneratorMismatch {
                    left: n,
                    right: h.n_fermions(),
                });
            }
        }
        for (a, b) in [self.inject_pair, self.readout_pair] {
            if a == b || a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidConfig(format!(
                    "invalid fermion pair ({a}, {b}) for {n} fermions"
                )));
            }
        }
        if let ProtocolMode::ExactCoupled { window } = self.mode {
            if !(window > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "coupling window must be positive, got {window}"
                )));
            }
        }
        Ok(())
    }

    pub fn with_mu(&self, mu: f64) -> Self {
        ProtocolConfig { mu, ..self.clone() }
    }

    pub fn with_t1(&self, t1: f64) -> Self {
        ProtocolConfig { t1, ..self.clone() }
    }
}

/// Outcome of a single run.
#[derive(Debug, Clone, PartialEq)]
pub struct TeleportResult {
    pub mutual_info: f64,
    pub config: ProtocolConfig,
}

/// Mutual information over a readout-time grid for one or both interaction signs.
#[derive(Debug, Clone, PartialEq)]
pub struct TeleportSeries {
    pub config: ProtocolConfig,
    pub t1: Vec<f64>,
    /// `(mu, I(t1) for every grid point)`.
    pub branches: Vec<(f64, Vec<f64>)>,
}

impl TeleportSeries {
    pub fn branch(&self, mu: f64) -> Option<&[f64]> {
        self.branches
            .iter()
            .find(|(m, _)| *m == mu)
            .map(|(_, v)| v.as_slice())
    }

    /// Rows `(mode, beta, t0, t1, mu, mutual_info_bits)`.
    pub fn rows(&self) -> Vec<(String, f64, f64, f64, f64, f64)> {
        let mut out = Vec::new();
        for (mu, values) in &self.branches {
            for (t, i) in self.t1.iter().zip(values) {
                out.push((
                    self.config.mode.name().to_string(),
                    self.config.beta,
                    self.config.t0,
                    *t,
                    *mu,
                    *i,
                ));
            }
        }
        out
    }

    pub fn write_csv(&self, out: &mut impl std::io::Write) -> std::io::Result<()> {
        writeln!(out, "# mode,beta,t0,t1,mu,mutual_info_bits")?;
        for (mode, beta, t0, t1, mu, i) in self.rows() {
            writeln!(out, "{mode},{beta},{t0},{t1},{mu},{i}")?;
        }
        Ok(())
    }
}

/// `max_t I_{-|mu|}(t) - max_t I_{+|mu|}(t)`.
pub fn asymmetry_score(series: &TeleportSeries) -> Result<f64> {
    let peak = |want_negative: bool| {
        series
            .branches
            .iter()
            .filter(|(m, _)| *m != 0.0 && (*m < 0.0) == want_negative)
            .flat_map(|(_, v)| v.iter().copied())
            .fold(None, |acc: Option<f64>, x| {
                Some(acc.map_or(x, |a| a.max(x)))
            })
    };
    let zero = series.branches.iter().any(|(m, _)| *m == 0.0);
    match (peak(true), peak(false)) {
        (Some(neg), Some(pos)) => Ok(neg - pos),
        // mu = 0 is its own mirror image
        _ if zero && series.branches.len() >= 2 => Ok(0.0),
        _ => Err(Error::SingleSignSeries),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ProtocolConfig::default().validate().is_ok());
        let bad = ProtocolConfig {
            inject_pair: (1, 1),
            ..ProtocolConfig::default()
        };
        assert!(bad.validate().is_err());
        let neg = ProtocolConfig {
            t0: -1.0,
            ..ProtocolConfig::default()
        };
        assert!(matches!(neg.validate(), Err(Error::NegativeTime(_))));
    }

    #[test]
    fn asymmetry_needs_both_signs() {
        let s = TeleportSeries {
            config: ProtocolConfig::default(),
            t1: vec![0.0, 1.0],
            branches: vec![(-12.0, vec![0.1, 0.4])],
        };
        assert!(matches!(asymmetry_score(&s), Err(Error::SingleSignSeries)));
        let both = TeleportSeries {
            branches: vec![(-12.0, vec![0.1, 0.4]), (12.0, vec![0.3, 0.2])],
            ..s
        };
        assert!((asymmetry_score(&both).unwrap() - 0.1).abs() < 1e-15);
    }
}
