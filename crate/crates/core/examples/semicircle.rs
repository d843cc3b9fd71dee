//! Rescaled Jacobi zeros and a sampled spectrum against the semicircle law.

use beta_ensembles::concentration::semicircle_distance;
use beta_ensembles::distributions::SeededStream;
use beta_ensembles::jacobi::{self, JacobiParams};

fn main() -> beta_ensembles::Result<()> {
    for &(n, a) in &[(50, 1e3), (200, 4e4), (400, 1e6)] {
        let p = JacobiParams::new(n, 1.0, a, a)?;
        let zeros = jacobi::polynomial_zeros(&p)?;
        let sample = jacobi::sample_spectrum(&p, &mut SeededStream::new(3, 0))?;
        println!(
            "n = {n:>3}, a = b = {a:>7}: KS zeros {:.4}, KS sample {:.4}",
            semicircle_distance(&jacobi::semicircle_transform(&zeros, &p))?,
            semicircle_distance(&jacobi::semicircle_transform(&sample, &p))?
        );
    }
    Ok(())
}
