use std::f64::consts::PI;

use crate::error::{domain, Result};

/// CDF of the semicircle law on `[-2, 2]`.
pub fn semicircle_cdf(x: f64) -> f64 {
    if x <= -2.0 {
        0.0
    } else if x >= 2.0 {
        1.0
    } else {
        0.5 + (x * (4.0 - x * x).sqrt() + 4.0 * (x / 2.0).asin()) / (4.0 * PI)
    }
}

/// Kolmogorov distance between the empirical CDF of `points` and the
/// semicircle CDF.
pub fn semicircle_distance(points: &[f64]) -> Result<f64> {
    if points.is_empty() {
        return Err(domain("semicircle distance of an empty sample"));
    }
    if points.iter().any(|x| !x.is_finite()) {
        return Err(crate::error::Error::NonFinite("semicircle sample".into()));
    }
    let mut xs = points.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    Ok(xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = semicircle_cdf(x);
            (f - i as f64 / n).abs().max((i as f64 + 1.0) / n - f)
        })
        .fold(0.0, f64::max))
}
