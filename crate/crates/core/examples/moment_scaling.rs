//! Variance of `M_1` and `M'` along a doubling grid in `(n, a + b)`.

use beta_ensembles::concentration::{m1_variance_slope, moment_experiment};
use beta_ensembles::jacobi::JacobiParams;

fn main() -> beta_ensembles::Result<()> {
    let grid = [(8, 64.0), (16, 128.0), (32, 256.0)]
        .into_iter()
        .map(|(n, s)| JacobiParams::new(n, 2.0, s / 2.0, s / 2.0))
        .collect::<Result<Vec<_>, _>>()?;
    let cells = moment_experiment(&grid, 5_000, 8, &[])?;
    println!("    n    a+b     Var M1       Var M2       Var M'     E M2 (leading)  mean M2");
    for c in &cells {
        let p = c.params;
        println!(
            "{:>5} {:>6} {:>12.4e} {:>12.4e} {:>12.4e} {:>14.6} {:>10.6}",
            p.n(),
            p.a() + p.b(),
            c.var_m1,
            c.var_m2,
            c.var_mprime,
            c.expected_m2_leading,
            c.mean_m2
        );
    }
    println!(
        "slope of ln Var M1 against ln(N n): {:.3}",
        m1_variance_slope(&cells)?
    );
    Ok(())
}
