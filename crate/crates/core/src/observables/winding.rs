use crate::dynamics::{build_dense, DenseOperator, Spectrum, C64};
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSpec;
use crate::majorana::{Monomial, Normalization, OperatorExpansion, PauliString, Register, Side};
use std::f64::consts::PI;

/// Sizes whose weight `p(l)` is at or below this floor do not enter the phase fit.
pub const DEFAULT_WEIGHT_FLOOR: f64 = 1e-6;
/// Winding-quality threshold for an acceptable best time.
pub const DEFAULT_QUALITY_THRESHOLD: f64 = 0.8;
/// Inverse temperature used for size-winding diagnostics unless overridden.
pub const DEFAULT_WINDING_BETA: f64 = 4.0;

/// Size distributions of `rho^{1/2} psi^j(t)` at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeWindingData {
    pub time: f64,
    pub fermion: usize,
    /// `p[l] = sum_{|P|=l} |c_P|^2` for `l = 0..=n`.
    pub p: Vec<f64>,
    /// `q[l] = sum_{|P|=l} c_P^2` for `l = 0..=n`.
    pub q: Vec<C64>,
}

impl SizeWindingData {
    /// Odd sizes `1, 3, 5, ...` up to `n`.
    pub fn odd_sizes(&self) -> Vec<usize> {
        (1..self.p.len()).step_by(2).collect()
    }

    /// `arg q(l)` for each size with `p(l) > weight_floor`, in increasing `l`.
    pub fn phases(&self, weight_floor: f64) -> Vec<(usize, f64)> {
        (1..self.p.len())
            .filter(|&l| self.p[l] > weight_floor)
            .map(|l| (l, self.q[l].arg()))
            .collect()
    }
}

/// Linearity of `arg q(l)` in `l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingQuality {
    /// Population standard deviation of the wrapped adjacent phase differences;
    /// `None` when fewer than three sizes qualify.
    pub std: Option<f64>,
    pub time_of_best: Option<f64>,
    pub threshold: f64,
}

impl WindingQuality {
    /// `std`, with an undefined quality read as `+inf`.
    pub fn value(&self) -> f64 {
        self.std.unwrap_or(f64::INFINITY)
    }
}

/// Maps an angle into `(-pi, pi]`.
pub fn wrap_phase(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Winding quality of one snapshot.
pub fn winding_quality(data: &SizeWindingData, weight_floor: f64) -> WindingQuality {
    WindingQuality {
        std: phase_difference_std(&data.phases(weight_floor)),
        time_of_best: None,
        threshold: DEFAULT_QUALITY_THRESHOLD,
    }
}

fn phase_difference_std(phases: &[(usize, f64)]) -> Option<f64> {
    if phases.len() < 3 {
        return None;
    }
    let diffs: Vec<f64> = phases
        .windows(2)
        .map(|w| wrap_phase(w[1].1 - w[0].1))
        .collect();
    let n = diffs.len() as f64;
    let mean = diffs.iter().sum::<f64>() / n;
    let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / n;
    Some(var.sqrt())
}

/// Settings shared by the size-winding routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingConfig {
    pub beta: f64,
    pub normalization: Normalization,
    pub weight_floor: f64,
    pub threshold: f64,
}

impl Default for WindingConfig {
    fn default() -> Self {
        WindingConfig {
            beta: DEFAULT_WINDING_BETA,
            normalization: Normalization::Half,
            weight_floor: DEFAULT_WEIGHT_FLOOR,
            threshold: DEFAULT_QUALITY_THRESHOLD,
        }
    }
}

/// Cached spectrum, thermal factor and monomial basis for one Hamiltonian.
#[derive(Debug, Clone)]
pub struct WindingCalculator {
    register: Register,
    spectrum: Spectrum,
    rho_half: DenseOperator,
    basis: Vec<(u32, PauliString)>,
    config: WindingConfig,
}

impl WindingCalculator {
    pub fn new(spec: &HamiltonianSpec, config: WindingConfig) -> Result<Self> {
        if !(config.beta >= 0.0) {
            return Err(Error::NegativeBeta(config.beta));
        }
        let n = spec.n_fermions();
        let register = Register::single_sided(n, config.normalization);
        let spectrum = build_dense(&spec.with_side(Side::Single), &register)?.eigen();
        let (rho_half, _) = spectrum.boltzmann(config.beta / 2.0);
        let basis = (0..1u32 << n)
            .map(|mask| {
                let m = Monomial::from_mask(mask, n);
                register.monomial_pauli(&m, Side::Single).map(|p| (mask, p))
            })
            .collect::<Result<_>>()?;
        Ok(WindingCalculator {
            register,
            spectrum,
            rho_half,
            basis,
            config,
        })
    }

    pub fn config(&self) -> &WindingConfig {
        &self.config
    }

    /// Unit-normalised expansion of `rho^{1/2} psi^j(t)`.
    pub fn expansion(&self, j: usize, t: f64) -> Result<OperatorExpansion> {
        let psi = self.register.majorana(Side::Single, j)?;
        let op = &self.rho_half * &self.spectrum.heisenberg(&psi, t);
        let dim = self.register.dim() as f64;
        let terms = self
            .basis
            .iter()
            .map(|(mask, p)| (*mask, p.overlap(op.matrix()) / dim));
        Ok(OperatorExpansion::from_terms(terms, self.register.n_fermions).normalized())
    }

    pub fn data(&self, j: usize, t: f64) -> Result<SizeWindingData> {
        let (p, q) = self.expansion(j, t)?.size_sums();
        Ok(SizeWindingData {
            time: t,
            fermion: j,
            p,
            q,
        })
    }

    pub fn quality(&self, j: usize, t: f64) -> Result<WindingQuality> {
        let d = self.data(j, t)?;
        let mut w = winding_quality(&d, self.config.weight_floor);
        w.threshold = self.config.threshold;
        Ok(w)
    }

    /// Quality values over `grid`, undefined points read as `+inf`.
    pub fn scan(&self, j: usize, grid: &[f64]) -> Result<Vec<f64>> {
        check_grid(grid)?;
        grid.iter()
            .map(|&t| self.quality(j, t).map(|w| w.value()))
            .collect()
    }

    /// First strict local minimum of the scan below the threshold.
    pub fn best_time(&self, j: usize, grid: &[f64]) -> Result<Option<f64>> {
        let s = self.scan(j, grid)?;
        Ok(first_local_minimum(&s, self.config.threshold).map(|i| grid[i]))
    }
}

/// Index `i` of the first point with `s[i] < s[i-1]`, `s[i] <= s[i+1]` and `s[i] < threshold`.
pub fn first_local_minimum(s: &[f64], threshold: f64) -> Option<usize> {
    (1..s.len().saturating_sub(1))
        .find(|&i| s[i] < s[i - 1] && s[i] <= s[i + 1] && s[i] < threshold)
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if grid[0] < 0.0 {
        return Err(Error::NegativeTime(grid[0]));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidConfig("time grid must be increasing".into()));
    }
    Ok(())
}

/// `p(l)` and `q(l)` for `rho^{1/2} psi^j(t)` under `spec` at inverse temperature `beta`.
pub fn size_distributions(
    spec: &HamiltonianSpec,
    beta: f64,
    j: usize,
    t: f64,
) -> Result<SizeWindingData> {
    let cfg = WindingConfig {
        beta,
        ..WindingConfig::default()
    };
    WindingCalculator::new(spec, cfg)?.data(j, t)
}

/// Best size-winding time of fermion `j` on `grid`.
pub fn best_winding_time(
    spec: &HamiltonianSpec,
    j: usize,
    grid: &[f64],
    threshold: f64,
    beta: f64,
) -> Result<Option<f64>> {
    let cfg = WindingConfig {
        beta,
        threshold,
        ..WindingConfig::default()
    };
    WindingCalculator::new(spec, cfg)?.best_time(j, grid)
}

/// Evenly spaced points `start, start + step, ...` not exceeding `stop` (with round-off slack).
pub fn time_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(stop >= start) {
        return Err(Error::EmptyGrid);
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    // rounding keeps printed grid values tidy
    Ok((0..n)
        .map(|k| ((start + k as f64 * step) * 1e10).round() / 1e10)
        .collect())
}
