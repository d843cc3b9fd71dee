//! Calibrated constants for the symmetric-beta tail bounds.
//!
//! The bounds `4 exp(-C k delta^2)` only fix their form; `C` is chosen by a
//! Monte Carlo dominance sweep (pinned at 1/4 unless the sweep demands less)
//! and checked into `fixtures/calibration.toml`.
//! [`run_sweep`] reproduces that sweep and [`Calibration::to_toml`] renders the
//! fixture.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{derive_seed, sample_sym_beta, SeededStream, SymBetaVariate};
use crate::concentration::clopper_pearson;

const FIXTURE: &str = include_str!("../../fixtures/calibration.toml");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    pub sym_beta: f64,
    pub sym_beta_sqrt_shift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub seed: u64,
    pub draws: u64,
    pub min_count: u64,
    pub cells: usize,
    pub sym_beta_min_constant: f64,
    pub sym_beta_sqrt_shift_min_constant: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub constants: BoundConstants,
    pub sweep: SweepSummary,
}

impl Calibration {
    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        let body = toml::to_string(self).expect("calibration serializes");
        format!(
            "# Tail-bound constants for 4*exp(-C*k*delta^2).\n\
             # Regenerate with `rmt calibrate-bounds --out crates/core/fixtures`.\n\n{body}"
        )
    }
}

/// The checked-in calibration.
pub fn fixture() -> &'static Calibration {
    static CAL: OnceLock<Calibration> = OnceLock::new();
    CAL.get_or_init(|| Calibration::parse(FIXTURE).expect("calibration fixture is valid TOML"))
}

pub fn constants() -> BoundConstants {
    fixture().constants
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub seed: u64,
    pub draws: u64,
    pub shapes: Vec<f64>,
    pub deltas: Vec<f64>,
    /// Cells with fewer exceedances carry no usable information on `C`.
    pub min_count: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            seed: 0x5EED_CA1B,
            draws: 200_000,
            shapes: vec![0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0, 300.0],
            deltas: vec![0.05, 0.1, 0.2, 0.3, 0.5, 0.8],
            min_count: 10,
        }
    }
}

impl SweepConfig {
    /// Ordered shape pairs `(k, l)` with `k >= l`.
    pub fn shape_pairs(&self) -> Vec<(f64, f64)> {
        let mut pairs = Vec::new();
        for &k in &self.shapes {
            for &l in &self.shapes {
                if k >= l {
                    pairs.push((k, l));
                }
            }
        }
        pairs
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell {
    pub k: f64,
    pub l: f64,
    pub delta: f64,
    pub draws: u64,
    pub centered_exceed: u64,
    /// Worse of the `sqrt(1+Z)` and `sqrt(1-Z)` exceedance counts.
    pub sqrt_shift_exceed: u64,
}

/// Largest `C` for which `4 exp(-C k delta^2)` still covers the 95% upper
/// confidence limit of the observed frequency. `None` when the cell is too
/// sparse to say anything.
fn max_constant(exceed: u64, draws: u64, k: f64, delta: f64, min_count: u64) -> Option<f64> {
    if exceed < min_count {
        return None;
    }
    let (_, hi) = clopper_pearson(exceed, draws, 0.05);
    Some((4.0 / hi).ln() / (k * delta * delta))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub cells: Vec<SweepCell>,
    pub calibration: Calibration,
}

/// Adopted constant for both bound families unless a sweep demands less.
pub const PINNED_CONSTANT: f64 = 0.25;

/// Power of two at most half of the sweep minimum.
fn conservative_constant(min_c: f64) -> f64 {
    let halved = 0.5 * min_c;
    2f64.powi(halved.log2().floor() as i32)
}

/// The pinned constant, lowered to the conservative sweep value if that is
/// smaller.
fn adopted_constant(min_c: f64) -> f64 {
    PINNED_CONSTANT.min(conservative_constant(min_c))
}

pub fn run_sweep(cfg: &SweepConfig) -> SweepReport {
    let pairs = cfg.shape_pairs();
    let cells: Vec<SweepCell> = pairs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(idx, &(k, l))| {
            let mut stream = SeededStream::new(derive_seed(cfg.seed, idx as u64), 0);
            let mean = SymBetaVariate::mean(k, l);
            let (sp, sm) = ((1.0 + mean).sqrt(), (1.0 - mean).sqrt());
            let mut centered = vec![0u64; cfg.deltas.len()];
            let mut plus = vec![0u64; cfg.deltas.len()];
            let mut minus = vec![0u64; cfg.deltas.len()];
            for _ in 0..cfg.draws {
                let z = sample_sym_beta(k, l, &mut stream)
                    .expect("sweep shapes are positive")
                    .value;
                let dc = (z - mean).abs();
                let dp = ((1.0 + z).sqrt() - sp).abs();
                let dm = ((1.0 - z).sqrt() - sm).abs();
                for (j, &d) in cfg.deltas.iter().enumerate() {
                    centered[j] += u64::from(dc > d);
                    plus[j] += u64::from(dp > d);
                    minus[j] += u64::from(dm > d);
                }
            }
            let draws = cfg.draws;
            cfg.deltas
                .iter()
                .enumerate()
                .map(move |(j, &delta)| SweepCell {
                    k,
                    l,
                    delta,
                    draws,
                    centered_exceed: centered[j],
                    sqrt_shift_exceed: plus[j].max(minus[j]),
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let min_over = |count: fn(&SweepCell) -> u64| {
        cells
            .iter()
            .filter_map(|c| max_constant(count(c), c.draws, c.k, c.delta, cfg.min_count))
            .fold(f64::INFINITY, f64::min)
    };
    let min_centered = min_over(|c| c.centered_exceed);
    let min_shift = min_over(|c| c.sqrt_shift_exceed);

    let calibration = Calibration {
        constants: BoundConstants {
            sym_beta: adopted_constant(min_centered),
            sym_beta_sqrt_shift: adopted_constant(min_shift),
        },
        sweep: SweepSummary {
            seed: cfg.seed,
            draws: cfg.draws,
            min_count: cfg.min_count,
            cells: cells.len(),
            sym_beta_min_constant: min_centered,
            sym_beta_sqrt_shift_min_constant: min_shift,
        },
    };
    SweepReport { cells, calibration }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_parses_and_matches_pinned_constant() {
        let c = constants();
        assert_eq!(c.sym_beta, PINNED_CONSTANT);
        assert_eq!(c.sym_beta_sqrt_shift, PINNED_CONSTANT);
        let cal = fixture();
        assert!(cal.sweep.draws > 0 && cal.sweep.cells > 0);
        assert!(cal.constants.sym_beta <= 0.5 * cal.sweep.sym_beta_min_constant);
        assert!(
            cal.constants.sym_beta_sqrt_shift <= 0.5 * cal.sweep.sym_beta_sqrt_shift_min_constant
        );
    }

    #[test]
    fn toml_round_trip() {
        let cal = fixture().clone();
        assert_eq!(Calibration::parse(&cal.to_toml()).unwrap(), cal);
    }

    #[test]
    fn conservative_constant_is_power_of_two_below_half() {
        assert_eq!(conservative_constant(1.0), 0.5);
        assert_eq!(conservative_constant(0.9), 0.25);
        assert_eq!(conservative_constant(0.5), 0.25);
        assert_eq!(adopted_constant(1.12), 0.25);
        assert_eq!(adopted_constant(0.3), 0.125);
    }

    #[test]
    fn sparse_cells_are_ignored() {
        assert_eq!(max_constant(3, 1000, 10.0, 0.1, 10), None);
        assert!(max_constant(100, 1000, 10.0, 0.1, 10).unwrap() > 0.0);
    }
}
