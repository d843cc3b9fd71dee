//! Tail of `max |mu_i - y_i|` as `a + b` doubles, at several thresholds from
//! the same replicates.

use beta_ensembles::concentration::{estimate_tails, fit_rate, EnsembleCell};
use beta_ensembles::jacobi::JacobiParams;

fn main() -> beta_ensembles::Result<()> {
    let eps = [0.1, 0.15, 0.2];
    let mut series = Vec::new();
    for (i, a) in [10.0, 20.0, 40.0].into_iter().enumerate() {
        let cell = EnsembleCell::Jacobi(JacobiParams::new(8, 2.0, a, a)?);
        let tails = estimate_tails(&cell, &eps, 10_000, 70 + i as u64)?;
        let row: Vec<String> = tails.iter().map(|t| format!("{:.4}", t.p_hat)).collect();
        println!(
            "a = b = {a:>3}: p_hat at eps {eps:?} = [{}]",
            row.join(", ")
        );
        series.extend(eps.iter().map(|&e| cell.predictor(e)).zip(tails));
    }
    let fit = fit_rate(&series)?;
    println!(
        "slope vs (a+b) eps^2: {:.3} (r^2 {:.3}, {} usable cells)",
        fit.slope,
        fit.r_squared,
        fit.predictors.len()
    );
    Ok(())
}
