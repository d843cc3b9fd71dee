//! Tail of `max |lambda_i - x_i| / 2 alpha` along an alpha-doubling grid and
//! its exponential rate fit.

use beta_ensembles::concentration::{estimate_tail, fit_rate, EnsembleCell};
use beta_ensembles::laguerre::LaguerreParams;

fn main() -> beta_ensembles::Result<()> {
    let eps = 0.1;
    let mut series = Vec::new();
    for (i, alpha) in [20.0, 40.0, 80.0].into_iter().enumerate() {
        let cell = EnsembleCell::Laguerre(LaguerreParams::new(8, 2.0, alpha)?);
        let t = estimate_tail(&cell, eps, 10_000, 40 + i as u64)?;
        println!(
            "alpha {alpha:>4}: p_hat {:.4}  95% CI [{:.4}, {:.4}]",
            t.p_hat, t.ci_lo, t.ci_hi
        );
        series.push((cell.predictor(eps), t));
    }
    let fit = fit_rate(&series)?;
    println!(
        "ln p ~ {:.3} * alpha eps min(eps,1) + {:.3}, r^2 = {:.3}",
        fit.slope, fit.intercept, fit.r_squared
    );
    Ok(())
}
