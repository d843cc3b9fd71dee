//! The β-Laguerre ensemble through its bidiagonal-square tridiagonal model,
//! the deterministic matrix whose eigenvalues are the Laguerre zeros, and the
//! pointwise deviation statistic between the two.

mod wishart;

pub use wishart::wishart_oracle;

use serde::{Deserialize, Serialize};

use crate::distributions::{sample_chi, SeededStream};
use crate::error::{domain, ensure_positive, Error, Result};
use crate::tridiag::{eigenvalues, Spectrum, SymmetricTridiagonal, DEFAULT_TOL};

/// Parameters `(n, beta, alpha)` with `alpha > (n - 1) beta / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaguerreParams {
    n: usize,
    beta: f64,
    alpha: f64,
}

impl LaguerreParams {
    pub fn new(n: usize, beta: f64, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(domain("Laguerre order n must be at least 1"));
        }
        ensure_positive("beta", beta)?;
        ensure_positive("alpha", alpha)?;
        let floor = (n - 1) as f64 * beta / 2.0;
        if alpha <= floor {
            return Err(domain(format!(
                "Laguerre constraint alpha > (n-1)*beta/2 violated: alpha = {alpha}, (n-1)*beta/2 = {floor}"
            )));
        }
        Ok(Self { n, beta, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Laguerre parameter `p = 2 alpha / beta - n` of the polynomial whose
    /// zeros (scaled by `beta`) the spectrum concentrates on.
    pub fn polynomial_parameter(&self) -> f64 {
        2.0 * self.alpha / self.beta - self.n as f64
    }

    /// Degrees of freedom of `X_{2 alpha - (i-1) beta}`, `i = 1..=n`.
    fn x_dof(&self, i: usize) -> f64 {
        2.0 * self.alpha - (i - 1) as f64 * self.beta
    }

    /// Degrees of freedom of `Y_{(n-i) beta}`, `i = 1..n`.
    fn y_dof(&self, i: usize) -> f64 {
        (self.n - i) as f64 * self.beta
    }
}

/// `(1 / 2 alpha) max_i |lambda_i - x_i|`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DeviationStat {
    pub value: f64,
}

/// Random tridiagonal matrix whose eigenvalues follow the β-Laguerre law.
///
/// Each `X_i` and `Y_i` is drawn once: `X_i` feeds `diag[i]` and `sub[i]`,
/// `Y_i` feeds `sub[i]` and `diag[i + 1]`.
pub fn random_matrix(
    p: &LaguerreParams,
    stream: &mut SeededStream,
) -> Result<SymmetricTridiagonal> {
    let n = p.n;
    let xs = (1..=n)
        .map(|i| sample_chi(p.x_dof(i), stream).map(|c| c.value))
        .collect::<Result<Vec<_>>>()?;
    let ys = (1..n)
        .map(|i| sample_chi(p.y_dof(i), stream).map(|c| c.value))
        .collect::<Result<Vec<_>>>()?;

    let diag = (0..n)
        .map(|i| {
            let y2 = if i == 0 { 0.0 } else { ys[i - 1] * ys[i - 1] };
            xs[i] * xs[i] + y2
        })
        .collect();
    let sub = (0..n - 1).map(|i| xs[i] * ys[i]).collect();
    SymmetricTridiagonal::new(diag, sub)
}

pub fn sample_spectrum(p: &LaguerreParams, stream: &mut SeededStream) -> Result<Spectrum> {
    let tag = stream.tag();
    let t = random_matrix(p, stream)?;
    Ok(eigenvalues(&t, DEFAULT_TOL)?.with_source(tag))
}

/// Every `X_k^2, Y_l^2` replaced by its mean and every `X_k Y_l` by
/// `sqrt(k l)`.
pub fn deterministic_matrix(p: &LaguerreParams) -> Result<SymmetricTridiagonal> {
    let n = p.n;
    let (alpha, beta) = (p.alpha, p.beta);
    let diag = (1..=n)
        .map(|i| {
            if i == 1 {
                2.0 * alpha
            } else {
                2.0 * alpha + (n as f64 + 2.0 - 2.0 * i as f64) * beta
            }
        })
        .collect();
    let sub = (1..n)
        .map(|i| {
            let radicand = p.x_dof(i) * p.y_dof(i);
            if radicand > 0.0 {
                Ok(radicand.sqrt())
            } else {
                Err(Error::NegativeRadicand {
                    index: i,
                    value: radicand,
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    SymmetricTridiagonal::new(diag, sub)
}

/// Zeros `x_1 < ... < x_n` of `L_n^{(2 alpha / beta - n)}(x / beta)`.
pub fn polynomial_zeros(p: &LaguerreParams) -> Result<Spectrum> {
    eigenvalues(&deterministic_matrix(p)?, DEFAULT_TOL)
}

/// Generalized Laguerre polynomial `L_n^{(p)}(x)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k + 1 + p - x) L_k - (k + p) L_{k-1}`.
pub fn laguerre_eval(n: usize, p: f64, x: f64) -> Result<f64> {
    if !(p > -1.0) {
        return Err(domain(format!(
            "Laguerre parameter must exceed -1, got {p}"
        )));
    }
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 1.0 + p - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + p - x) * cur - (kf + p) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Interval `2n + p - 2 +- sqrt(1 + 4(n-1)(n+p-1) cos^2(pi/(n+1)))` meant to hold
/// the zeros of `L_n^{(p)}`. The upper endpoint bounds the largest zero; the
/// lower endpoint can exceed the smallest zero (e.g. `L_5^{(3)}`).
pub fn zero_interval(n: usize, p: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(domain("zero interval needs n >= 1"));
    }
    if !(p > -1.0) {
        return Err(domain(format!(
            "Laguerre parameter must exceed -1, got {p}"
        )));
    }
    let nf = n as f64;
    let c = (std::f64::consts::PI / (nf + 1.0)).cos();
    let half = (1.0 + 4.0 * (nf - 1.0) * (nf + p - 1.0) * c * c).sqrt();
    let centre = 2.0 * nf + p - 2.0;
    Ok((centre - half, centre + half))
}

pub fn max_scaled_deviation(
    sample: &Spectrum,
    zeros: &Spectrum,
    alpha: f64,
) -> Result<DeviationStat> {
    ensure_positive("alpha", alpha)?;
    Ok(DeviationStat {
        value: sample.max_abs_gap(zeros)? / (2.0 * alpha),
    })
}
