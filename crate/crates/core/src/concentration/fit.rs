use serde::{Deserialize, Serialize};

use super::TailEstimate;
use crate::error::{domain, Error, Result};

/// Cells below this exceedance count are left out of fits.
pub const MIN_USABLE_COUNT: u64 = 5;

const MIN_USABLE_CELLS: usize = 3;

/// Weighted least-squares line through `(predictor, ln p_hat)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub predictors: Vec<f64>,
    pub log_p: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Delta-method variance of `ln p_hat`, `(1 - p) / (R p)`, with `1/(2R)` added
/// to `1 - p` so saturated cells keep a finite weight.
fn log_p_variance(t: &TailEstimate) -> f64 {
    let r = t.replicates as f64;
    (1.0 - t.p_hat + 0.5 / r) / (r * t.p_hat)
}

pub fn fit_rate(series: &[(f64, TailEstimate)]) -> Result<RateFit> {
    let usable: Vec<&(f64, TailEstimate)> = series
        .iter()
        .filter(|(_, t)| t.exceed_count >= MIN_USABLE_COUNT)
        .collect();
    if usable.len() < MIN_USABLE_CELLS {
        return Err(Error::InsufficientData {
            usable: usable.len(),
            required: MIN_USABLE_CELLS,
        });
    }
    let xs: Vec<f64> = usable.iter().map(|(x, _)| *x).collect();
    let ys: Vec<f64> = usable.iter().map(|(_, t)| t.p_hat.ln()).collect();
    let ws: Vec<f64> = usable
        .iter()
        .map(|(_, t)| 1.0 / log_p_variance(t))
        .collect();
    let (slope, intercept, r_squared) = weighted_line(&xs, &ys, &ws)?;
    Ok(RateFit {
        predictors: xs,
        log_p: ys,
        slope,
        intercept,
        r_squared,
    })
}

/// `(slope, intercept, r^2)` of the weighted least-squares line.
pub(crate) fn weighted_line(xs: &[f64], ys: &[f64], ws: &[f64]) -> Result<(f64, f64, f64)> {
    let w: f64 = ws.iter().sum();
    let xbar = xs.iter().zip(ws).map(|(x, w)| w * x).sum::<f64>() / w;
    let ybar = ys.iter().zip(ws).map(|(y, w)| w * y).sum::<f64>() / w;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for ((x, y), w) in xs.iter().zip(ys).zip(ws) {
        sxx += w * (x - xbar) * (x - xbar);
        sxy += w * (x - xbar) * (y - ybar);
        syy += w * (y - ybar) * (y - ybar);
    }
    if !(sxx > 0.0) {
        return Err(domain("fit needs at least two distinct predictor values"));
    }
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .zip(ws)
        .map(|((x, y), w)| w * (y - intercept - slope * x).powi(2))
        .sum();
    let r2 = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    Ok((slope, intercept, r2.clamp(0.0, 1.0)))
}

/// Ordinary least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            expected: xs.len(),
            found: ys.len(),
        });
    }
    if xs.len() < 2 || xs.iter().chain(ys).any(|v| !(*v > 0.0)) {
        return Err(domain("log-log slope needs two or more positive points"));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let ones = vec![1.0; xs.len()];
    Ok(weighted_line(&lx, &ly, &ones)?.0)
}
