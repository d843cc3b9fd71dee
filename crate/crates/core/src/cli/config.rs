//! Experiment configuration files.
//!
//! ```toml
//! ensemble = "jacobi"        # "laguerre" or "jacobi"
//! replicates = 10000         # per cell, at least 1000
//! seed = 11                  # optional; --seed and RMT_SEED take precedence
//! epsilons = [0.1, 0.15]     # thresholds
//! out = "results"            # optional; --out takes precedence
//!
//! [[cell]]
//! n = 8
//! beta = 2.0
//! a = 10.0                   # Jacobi cells: a and b
//! b = 10.0
//!
//! [[cell]]
//! n = 8
//! beta = 2.0
//! alpha = 20.0               # Laguerre cells: alpha
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::CliError;
use crate::concentration::EnsembleCell;
use crate::jacobi::JacobiParams;
use crate::laguerre::LaguerreParams;

pub const MIN_REPLICATES: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleKind {
    Laguerre,
    Jacobi,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellSpec {
    pub n: usize,
    pub beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
}

impl CellSpec {
    pub fn resolve(&self, kind: EnsembleKind) -> Result<EnsembleCell, CliError> {
        let usage = |msg: String| CliError::Usage(msg);
        match kind {
            EnsembleKind::Laguerre => {
                if self.a.is_some() || self.b.is_some() {
                    return Err(usage("Laguerre cells take `alpha`, not `a`/`b`".into()));
                }
                let alpha = self
                    .alpha
                    .ok_or_else(|| usage("Laguerre cell is missing `alpha`".into()))?;
                Ok(EnsembleCell::Laguerre(LaguerreParams::new(
                    self.n, self.beta, alpha,
                )?))
            }
            EnsembleKind::Jacobi => {
                if self.alpha.is_some() {
                    return Err(usage("Jacobi cells take `a` and `b`, not `alpha`".into()));
                }
                let (a, b) = self
                    .a
                    .zip(self.b)
                    .ok_or_else(|| usage("Jacobi cell needs both `a` and `b`".into()))?;
                Ok(EnsembleCell::Jacobi(JacobiParams::new(
                    self.n, self.beta, a, b,
                )?))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub ensemble: EnsembleKind,
    pub replicates: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub epsilons: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(rename = "cell", default)]
    pub cells: Vec<CellSpec>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("invalid config: {e}")))
    }

    /// Checks counts and thresholds and resolves every cell.
    pub fn validate(&self) -> Result<Vec<EnsembleCell>, CliError> {
        if self.replicates < MIN_REPLICATES {
            return Err(CliError::Usage(format!(
                "replicates must be at least {MIN_REPLICATES}, got {}",
                self.replicates
            )));
        }
        if let Some(e) = self.epsilons.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
            return Err(CliError::Usage(format!(
                "epsilons must be positive and finite, got {e}"
            )));
        }
        self.cells_only()
    }

    /// Resolves cells without the Monte Carlo checks.
    pub fn cells_only(&self) -> Result<Vec<EnsembleCell>, CliError> {
        if self.cells.is_empty() {
            return Err(CliError::Usage("config defines no [[cell]] tables".into()));
        }
        self.cells
            .iter()
            .map(|c| c.resolve(self.ensemble))
            .collect()
    }
}

/// sha256 of the canonical TOML rendering of `value`.
pub fn digest<T: Serialize>(value: &T) -> String {
    let canonical = toml::to_string(value).expect("config serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = r#"
ensemble = "laguerre"
replicates = 2000
epsilons = [0.1]

[[cell]]
n = 4
beta = 2.0
alpha = 10.0
"#;

    #[test]
    fn parses_and_validates() {
        let cfg = ExperimentConfig::parse(DEMO).unwrap();
        assert_eq!(cfg.cells.len(), 1);
        assert!(matches!(
            cfg.validate().unwrap()[0],
            EnsembleCell::Laguerre(_)
        ));
    }

    #[test]
    fn rejects_bad_configs() {
        let zero = DEMO.replace("replicates = 2000", "replicates = 0");
        assert!(ExperimentConfig::parse(&zero).unwrap().validate().is_err());
        let boundary = DEMO.replace("alpha = 10.0", "alpha = 3.0");
        assert!(ExperimentConfig::parse(&boundary)
            .unwrap()
            .validate()
            .is_err());
        let jac = DEMO.replace("laguerre", "jacobi");
        assert!(ExperimentConfig::parse(&jac).unwrap().validate().is_err());
        assert!(ExperimentConfig::parse(&DEMO.replace("epsilons", "epsilon")).is_err());
    }

    #[test]
    fn digest_ignores_formatting() {
        let a = ExperimentConfig::parse(DEMO).unwrap();
        let b = ExperimentConfig::parse(&DEMO.replace("beta = 2.0", "beta   =   2.00")).unwrap();
        assert_eq!(digest(&a), digest(&b));
        let c = ExperimentConfig::parse(&DEMO.replace("n = 4", "n = 5")).unwrap();
        assert_ne!(digest(&a), digest(&c));
    }
}
