//! Sample means of Laplace-plus-Gaussian variables: tail decays linearly in n.

use beta_ensembles::concentration::subexp_mean_experiment;

fn main() -> beta_ensembles::Result<()> {
    let report = subexp_mean_experiment(1.0, 1.0, &[2, 4, 8, 16], 1.0, 100_000, 10)?;
    for (n, t) in &report.cells {
        println!(
            "n {n:>3}: P(|mean| > 1) = {:.5} [{:.5}, {:.5}]",
            t.p_hat, t.ci_lo, t.ci_hi
        );
    }
    if let Some(fit) = report.fit {
        println!(
            "ln p ~ {:.3} n + {:.3} (r^2 {:.3})",
            fit.slope, fit.intercept, fit.r_squared
        );
    }
    Ok(())
}
