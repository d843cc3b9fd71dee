//! Replicate-parallel Monte Carlo drivers.
//!
//! Replicate `r` of a cell always draws from stream `(cell_seed, r)`, results
//! are collected in replicate order, and reductions run sequentially over that
//! order. Output is therefore identical for any thread count.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fit::{fit_rate, log_log_slope, RateFit};
use super::TailEstimate;
use crate::distributions::SeededStream;
use crate::error::{domain, Result};
use crate::jacobi::{self, JacobiParams};
use crate::laguerre::{self, LaguerreParams};
use crate::tridiag::Spectrum;

/// Runs `f` once per replicate on its own stream, in parallel.
pub fn replicate_map<T, F>(replicates: u64, seed: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut SeededStream) -> Result<T> + Sync,
{
    (0..replicates)
        .into_par_iter()
        .map(|r| f(&mut SeededStream::new(seed, r)))
        .collect()
}

fn mean_and_variance(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = if xs.len() > 1 {
        xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (mean, var)
}

/// Counts `stats > eps` for each threshold.
fn nested_tails(stats: &[f64], eps_grid: &[f64]) -> Vec<TailEstimate> {
    let replicates = stats.len() as u64;
    eps_grid
        .iter()
        .map(|&eps| {
            let exceed = stats.iter().filter(|&&s| s > eps).count() as u64;
            TailEstimate::from_counts(exceed, replicates)
        })
        .collect()
}

/// One ensemble parameter point of a concentration experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EnsembleCell {
    Laguerre(LaguerreParams),
    Jacobi(JacobiParams),
}

impl EnsembleCell {
    pub fn zeros(&self) -> Result<Spectrum> {
        match self {
            Self::Laguerre(p) => laguerre::polynomial_zeros(p),
            Self::Jacobi(p) => jacobi::polynomial_zeros(p),
        }
    }

    /// Laguerre: `max |lambda - x| / 2 alpha`; Jacobi: `max |mu - y|`.
    pub fn deviation(&self, zeros: &Spectrum, stream: &mut SeededStream) -> Result<f64> {
        match self {
            Self::Laguerre(p) => {
                let s = laguerre::sample_spectrum(p, stream)?;
                Ok(laguerre::max_scaled_deviation(&s, zeros, p.alpha())?.value)
            }
            Self::Jacobi(p) => {
                let s = jacobi::sample_spectrum(p, stream)?;
                jacobi::max_deviation(&s, zeros)
            }
        }
    }

    /// Exponent the tail is expected to decay in, up to a constant:
    /// `alpha eps min(eps, 1)` for Laguerre, `(a + b) eps^2` for Jacobi.
    pub fn predictor(&self, eps: f64) -> f64 {
        match self {
            Self::Laguerre(p) => p.alpha() * eps * eps.min(1.0),
            Self::Jacobi(p) => (p.a() + p.b()) * eps * eps,
        }
    }
}

/// Deviation statistic of every replicate, in replicate order.
pub fn deviation_samples(cell: &EnsembleCell, replicates: u64, seed: u64) -> Result<Vec<f64>> {
    let zeros = cell.zeros()?;
    replicate_map(replicates, seed, |stream| cell.deviation(&zeros, stream))
}

/// Tail estimates at every threshold of `eps_grid`; each replicate's
/// statistic is computed once and compared against all thresholds.
pub fn estimate_tails(
    cell: &EnsembleCell,
    eps_grid: &[f64],
    replicates: u64,
    seed: u64,
) -> Result<Vec<TailEstimate>> {
    if replicates == 0 {
        return Err(domain("replicates must be positive"));
    }
    let stats = deviation_samples(cell, replicates, seed)?;
    Ok(nested_tails(&stats, eps_grid))
}

pub fn estimate_tail(
    cell: &EnsembleCell,
    eps: f64,
    replicates: u64,
    seed: u64,
) -> Result<TailEstimate> {
    Ok(estimate_tails(cell, &[eps], replicates, seed)?[0])
}

/// Per-cell summary of the moment experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentCell {
    pub params: JacobiParams,
    pub replicates: u64,
    pub expected_m1: f64,
    pub expected_m2_leading: f64,
    pub y1: f64,
    pub y2: f64,
    pub mean_m1: f64,
    pub var_m1: f64,
    pub mean_m2: f64,
    pub var_m2: f64,
    pub mean_mprime: f64,
    pub var_mprime: f64,
    /// `(eps, P(|M_1 - mean_m1| > eps))`.
    pub m1_tails: Vec<(f64, TailEstimate)>,
}

fn moment_cell(
    p: &JacobiParams,
    replicates: u64,
    seed: u64,
    eps_grid: &[f64],
) -> Result<MomentCell> {
    if replicates < 2 {
        return Err(domain("moment experiment needs at least two replicates"));
    }
    let draws = replicate_map(replicates, seed, |stream| {
        let chain = jacobi::sample_z_chain(p, stream)?;
        let half = jacobi::half_spectrum(&jacobi::random_matrix(&chain)?)?;
        let m = jacobi::moments(&half, p);
        Ok((m.m1, m.m2, jacobi::mprime(&chain)))
    })?;
    let m1: Vec<f64> = draws.iter().map(|d| d.0).collect();
    let m2: Vec<f64> = draws.iter().map(|d| d.1).collect();
    let mp: Vec<f64> = draws.iter().map(|d| d.2).collect();
    let (mean_m1, var_m1) = mean_and_variance(&m1);
    let (mean_m2, var_m2) = mean_and_variance(&m2);
    let (mean_mprime, var_mprime) = mean_and_variance(&mp);
    let centred: Vec<f64> = m1.iter().map(|x| (x - mean_m1).abs()).collect();
    let m1_tails = eps_grid
        .iter()
        .copied()
        .zip(nested_tails(&centred, eps_grid))
        .collect();
    let (expected_m1, expected_m2_leading) = jacobi::expected_moments(p);
    let (y1, y2) = jacobi::zero_moments_closed_form(p)?;
    Ok(MomentCell {
        params: *p,
        replicates,
        expected_m1,
        expected_m2_leading,
        y1,
        y2,
        mean_m1,
        var_m1,
        mean_m2,
        var_m2,
        mean_mprime,
        var_mprime,
        m1_tails,
    })
}

/// Moment statistics over a grid; cell `i` uses stream seed
/// `derive_seed(seed, i)`.
pub fn moment_experiment(
    grid: &[JacobiParams],
    replicates: u64,
    seed: u64,
    eps_grid: &[f64],
) -> Result<Vec<MomentCell>> {
    grid.iter()
        .enumerate()
        .map(|(i, p)| {
            moment_cell(
                p,
                replicates,
                crate::distributions::derive_seed(seed, i as u64),
                eps_grid,
            )
        })
        .collect()
}

/// Slope of `ln Var M_1` against `ln(N n)` across moment cells.
pub fn m1_variance_slope(cells: &[MomentCell]) -> Result<f64> {
    let xs: Vec<f64> = cells
        .iter()
        .map(|c| c.params.big_n() * c.params.n() as f64)
        .collect();
    let ys: Vec<f64> = cells.iter().map(|c| c.var_m1).collect();
    log_log_slope(&xs, &ys)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MPrimeReport {
    /// `(params, Var M')` per cell.
    pub cells: Vec<(JacobiParams, f64)>,
    /// Slope of `ln Var M'` against `ln n`; `None` for a single cell.
    pub slope_vs_n: Option<f64>,
}

/// Sample variance of `M'` per cell and its log-log slope in `n`.
pub fn mprime_experiment(
    grid: &[JacobiParams],
    replicates: u64,
    seed: u64,
) -> Result<MPrimeReport> {
    if replicates < 2 {
        return Err(domain("M' experiment needs at least two replicates"));
    }
    let cells = grid
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let cell_seed = crate::distributions::derive_seed(seed, i as u64);
            let xs = replicate_map(replicates, cell_seed, |stream| {
                Ok(jacobi::mprime(&jacobi::sample_z_chain(p, stream)?))
            })?;
            Ok((*p, mean_and_variance(&xs).1))
        })
        .collect::<Result<Vec<_>>>()?;
    let slope_vs_n = if cells.len() >= 2 {
        let ns: Vec<f64> = cells.iter().map(|(p, _)| p.n() as f64).collect();
        let vs: Vec<f64> = cells.iter().map(|(_, v)| *v).collect();
        Some(log_log_slope(&ns, &vs)?)
    } else {
        None
    };
    Ok(MPrimeReport { cells, slope_vs_n })
}

/// Centred variable `Laplace(scale r) + N(0, s^2)`.
fn subexp_draw(r: f64, s: f64, stream: &mut SeededStream) -> f64 {
    let laplace = if r > 0.0 {
        let e = -(1.0 - stream.random::<f64>()).ln();
        if stream.random::<bool>() {
            r * e
        } else {
            -r * e
        }
    } else {
        0.0
    };
    let gauss: f64 = stream.sample(StandardNormal);
    laplace + s * gauss
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubexpReport {
    pub cells: Vec<(usize, TailEstimate)>,
    pub fit: Option<RateFit>,
}

/// Tail of the sample mean of `n` subexponential variables,
/// `P(|mean| > delta)`, over a grid of sample sizes, with a rate fit of
/// `ln p` against `n` when enough cells are usable.
pub fn subexp_mean_experiment(
    r: f64,
    s: f64,
    n_grid: &[usize],
    delta: f64,
    replicates: u64,
    seed: u64,
) -> Result<SubexpReport> {
    if !(r >= 0.0 && s >= 0.0 && r + s > 0.0) {
        return Err(domain(format!(
            "need r, s >= 0 with r + s > 0, got r={r}, s={s}"
        )));
    }
    if !(delta >= 0.0) {
        return Err(domain(format!("delta must be non-negative, got {delta}")));
    }
    if replicates == 0 || n_grid.contains(&0) {
        return Err(domain("replicates and sample sizes must be positive"));
    }
    let cells = n_grid
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let cell_seed = crate::distributions::derive_seed(seed, i as u64);
            let means = replicate_map(replicates, cell_seed, |stream| {
                Ok((0..n).map(|_| subexp_draw(r, s, stream)).sum::<f64>() / n as f64)
            })?;
            let exceed = means.iter().filter(|m| m.abs() > delta).count() as u64;
            Ok((n, TailEstimate::from_counts(exceed, replicates)))
        })
        .collect::<Result<Vec<_>>>()?;
    let series: Vec<(f64, TailEstimate)> = cells.iter().map(|(n, t)| (*n as f64, *t)).collect();
    Ok(SubexpReport {
        cells,
        fit: fit_rate(&series).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::distribution::{ContinuousCDF, Normal};

    #[test]
    fn jacobi_tail_beyond_support_is_empty() {
        let cell = EnsembleCell::Jacobi(JacobiParams::new(4, 2.0, 3.0, 3.0).unwrap());
        let t = estimate_tail(&cell, 3.0, 2000, 1).unwrap();
        assert_eq!(t.exceed_count, 0);
    }

    #[test]
    fn epsilon_nesting_is_monotone() {
        let cell = EnsembleCell::Laguerre(LaguerreParams::new(5, 2.0, 20.0).unwrap());
        let eps = [0.02, 0.05, 0.1, 0.2, 0.4];
        let tails = estimate_tails(&cell, &eps, 5000, 2).unwrap();
        for w in tails.windows(2) {
            assert!(w[1].exceed_count <= w[0].exceed_count);
        }
    }

    #[test]
    fn laguerre_self_consistency_across_seeds() {
        let cell = EnsembleCell::Laguerre(LaguerreParams::new(8, 2.0, 40.0).unwrap());
        let a = estimate_tail(&cell, 0.1, 5000, 100).unwrap();
        let b = estimate_tail(&cell, 0.1, 5000, 200).unwrap();
        assert!(a.p_hat >= b.ci_lo && a.p_hat <= b.ci_hi, "{a:?} vs {b:?}");
    }

    #[test]
    fn moment_n1_reduces_to_single_eigenvalue() {
        let p = JacobiParams::new(1, 2.0, 2.0, 3.0).unwrap();
        let cells = moment_experiment(&[p], 20_000, 3, &[0.1]).unwrap();
        let c = &cells[0];
        // B(b, a) on [-1,1] has variance 4ab / ((a+b)^2 (a+b+1))
        let want = 4.0 * 6.0 / (25.0 * 6.0);
        assert!((c.var_m1 / want - 1.0).abs() < 0.05, "{}", c.var_m1);
        assert_eq!(c.var_mprime, 0.0);
    }

    #[test]
    fn m1_variance_quarters_under_doubling() {
        let grid = [
            JacobiParams::new(4, 2.0, 12.0, 12.0).unwrap(),
            JacobiParams::new(8, 2.0, 24.0, 24.0).unwrap(),
        ];
        let cells = moment_experiment(&grid, 20_000, 4, &[]).unwrap();
        let ratio = cells[1].var_m1 / cells[0].var_m1;
        assert!((ratio / 0.25 - 1.0).abs() < 0.25, "ratio {ratio}");
    }

    #[test]
    fn mprime_variance_bounded() {
        let grid = [
            JacobiParams::new(2, 1.0, 1.0, 1.0).unwrap(),
            JacobiParams::new(4, 1.0, 1.0, 1.0).unwrap(),
        ];
        let rep = mprime_experiment(&grid, 5000, 5).unwrap();
        for (_, v) in &rep.cells {
            assert!(v.is_finite() && *v <= 1.0);
        }
        assert!(rep.slope_vs_n.is_some());
    }

    #[test]
    fn gaussian_mean_tail_matches_normal_cdf() {
        let delta = 0.5;
        let rep = subexp_mean_experiment(0.0, 1.0, &[8, 32], delta, 200_000, 6).unwrap();
        let normal = Normal::new(0.0, 1.0).unwrap();
        let exact: Vec<f64> = [8.0f64, 32.0]
            .iter()
            .map(|n| 2.0 * (1.0 - normal.cdf(delta * n.sqrt())))
            .collect();
        for ((_, t), p) in rep.cells.iter().zip(&exact) {
            assert!(
                (t.p_hat - p).abs() <= 3.5 * t.standard_error(),
                "{} vs {p}",
                t.p_hat
            );
        }
        let ratio = rep.cells[1].1.p_hat.ln() / rep.cells[0].1.p_hat.ln();
        assert!((ratio / 4.0 - 1.0).abs() < 0.5, "log ratio {ratio}");
    }

    #[test]
    fn zero_delta_always_exceeds() {
        let rep = subexp_mean_experiment(1.0, 1.0, &[4], 0.0, 1000, 7).unwrap();
        assert_eq!(rep.cells[0].1.p_hat, 1.0);
        assert!(subexp_mean_experiment(0.0, 0.0, &[4], 0.1, 10, 0).is_err());
    }

    #[test]
    fn subexp_rate_is_negative() {
        let rep = subexp_mean_experiment(1.0, 1.0, &[2, 4, 8, 16], 1.0, 100_000, 8).unwrap();
        let fit = rep.fit.unwrap();
        assert!(fit.slope < 0.0 && fit.r_squared >= 0.8, "{fit:?}");
    }

    #[test]
    fn results_independent_of_thread_count() {
        let cell = EnsembleCell::Jacobi(JacobiParams::new(6, 1.0, 5.0, 8.0).unwrap());
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| deviation_samples(&cell, 3000, 9).unwrap())
        };
        let a = run(1);
        let b = run(4);
        assert!(a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()));
    }
}
