//! Empirical chi-square and symmetric-beta tails next to their bounds.

use beta_ensembles::distributions::{
    chi_tail_bound, sample_chi, sample_sym_beta, sym_beta_tail_bound, SeededStream, SymBetaVariate,
};

fn main() -> beta_ensembles::Result<()> {
    let draws = 200_000;
    let mut s = SeededStream::new(9, 0);
    println!("chi^2_k:   P(X > k + 2 sqrt(kx) + 2x) vs exp(-x)");
    for k in [1.0, 4.0, 20.0] {
        let xs: Vec<f64> = (0..draws)
            .map(|_| sample_chi(k, &mut s).map(|c| c.squared()))
            .collect::<Result<_, _>>()?;
        for x in [1.0, 3.0] {
            let (threshold, bound) = chi_tail_bound(k, x)?;
            let p = xs.iter().filter(|&&v| v > threshold).count() as f64 / draws as f64;
            println!("  k {k:>4} x {x}: {p:.5} <= {bound:.5}");
        }
    }
    println!("B(k, l):   P(|Z - EZ| > d) vs 4 exp(-C k d^2)");
    for (k, l) in [(10.0, 10.0), (50.0, 5.0)] {
        let mean = SymBetaVariate::mean(k, l);
        let zs: Vec<f64> = (0..draws)
            .map(|_| sample_sym_beta(k, l, &mut s).map(|z| z.value))
            .collect::<Result<_, _>>()?;
        for d in [0.1, 0.3] {
            let p = zs.iter().filter(|&&z| (z - mean).abs() > d).count() as f64 / draws as f64;
            println!(
                "  k {k:>4} l {l:>4} d {d}: {p:.5} <= {:.5}",
                sym_beta_tail_bound(k, l, d)?
            );
        }
    }
    Ok(())
}
