//! The beta = 1 tridiagonal Laguerre model against real Wishart matrices.

use beta_ensembles::distributions::SeededStream;
use beta_ensembles::laguerre::{self, LaguerreParams};
use beta_ensembles::tridiag::Spectrum;

fn moments(spectra: &[Spectrum]) -> (f64, f64) {
    let total = spectra.iter().map(Spectrum::len).sum::<usize>() as f64;
    let m1 = spectra.iter().flat_map(|s| s.values()).sum::<f64>() / total;
    let m2 = spectra
        .iter()
        .flat_map(|s| s.values())
        .map(|x| x * x)
        .sum::<f64>()
        / total;
    (m1, m2)
}

fn main() -> beta_ensembles::Result<()> {
    let (n, s) = (3, 6);
    let p = LaguerreParams::new(n, 1.0, s as f64 / 2.0)?;
    let reps = 50_000u64;
    let model: Vec<_> = (0..reps)
        .map(|r| laguerre::sample_spectrum(&p, &mut SeededStream::new(1, r)))
        .collect::<Result<_, _>>()?;
    let wishart: Vec<_> = (0..reps)
        .map(|r| laguerre::wishart_oracle(n, s, 1, &mut SeededStream::new(2, r)))
        .collect::<Result<_, _>>()?;
    let (a1, a2) = moments(&model);
    let (b1, b2) = moments(&wishart);
    println!(
        "E lambda   tridiagonal {a1:.4}  Wishart {b1:.4}  exact {}",
        s
    );
    println!("E lambda^2 tridiagonal {a2:.4}  Wishart {b2:.4}");
    Ok(())
}
