//! Gamma variates by the Marsaglia–Tsang squeeze method.
//!
//! Shapes below one go through the boosting identity
//! `G_a = G_{a+1} * U^{1/a}`. A log-space variant returns `ln G` directly so
//! that beta ratios with wildly different shapes never underflow.

use rand::Rng;
use rand_distr::StandardNormal;

/// Uniform on (0, 1], safe to take the logarithm of.
fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    1.0 - rng.random::<f64>()
}

/// Marsaglia–Tsang for shape >= 1, returned as `ln G`.
fn ln_gamma_large<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> f64 {
    debug_assert!(shape >= 1.0);
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u = open_unit(rng);
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 {
            return d.ln() + v.ln();
        }
        let ln_v = v.ln();
        if u.ln() < 0.5 * x2 + d * (1.0 - v + ln_v) {
            return d.ln() + ln_v;
        }
    }
}

/// `ln G` for `G ~ Gamma(shape, 1)`, any positive shape.
pub(crate) fn sample_ln_gamma<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> f64 {
    if shape >= 1.0 {
        ln_gamma_large(shape, rng)
    } else {
        let boosted = ln_gamma_large(shape + 1.0, rng);
        boosted + open_unit(rng).ln() / shape
    }
}

/// `G ~ Gamma(shape, 1)`, any positive shape.
pub(crate) fn sample_gamma<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> f64 {
    if shape >= 1.0 {
        ln_gamma_large(shape, rng).exp()
    } else {
        let boosted = ln_gamma_large(shape + 1.0, rng).exp();
        boosted * open_unit(rng).powf(1.0 / shape)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn moments(shape: f64, draws: usize) -> (f64, f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let xs: Vec<f64> = (0..draws).map(|_| sample_gamma(shape, &mut rng)).collect();
        let mean = xs.iter().sum::<f64>() / draws as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (draws as f64 - 1.0);
        (mean, var)
    }

    #[test]
    fn mean_and_variance_match_shape() {
        for &shape in &[0.3, 0.9, 1.0, 2.5, 40.0] {
            let draws = 200_000;
            let (mean, var) = moments(shape, draws);
            let se = (shape / draws as f64).sqrt();
            assert!(
                (mean - shape).abs() < 4.0 * se,
                "shape {shape}: mean {mean}"
            );
            assert!((var / shape - 1.0).abs() < 0.05, "shape {shape}: var {var}");
        }
    }

    #[test]
    fn log_space_agrees_with_linear() {
        let mut a = ChaCha8Rng::seed_from_u64(5);
        let mut b = ChaCha8Rng::seed_from_u64(5);
        for &shape in &[0.2, 3.0] {
            for _ in 0..100 {
                let g = sample_gamma(shape, &mut a);
                let lg = sample_ln_gamma(shape, &mut b);
                assert!((g.ln() - lg).abs() < 1e-9 * lg.abs().max(1.0));
            }
        }
    }

    #[test]
    fn tiny_shape_stays_finite_in_log_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let lg = sample_ln_gamma(1e-3, &mut rng);
            assert!(lg.is_finite());
        }
    }
}
