use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::distributions::SeededStream;
use crate::error::{domain, Result};
use crate::tridiag::Spectrum;

/// Eigenvalues of `V V*` for an `n x s` Gaussian matrix: real entries for
/// `beta = 1`, complex entries with independent standard real and imaginary
/// parts for `beta = 2`. Equal in law to the tridiagonal model with
/// `alpha = beta s / 2`.
pub fn wishart_oracle(n: usize, s: usize, beta: u8, stream: &mut SeededStream) -> Result<Spectrum> {
    if n == 0 || s < n {
        return Err(domain(format!(
            "Wishart oracle needs 1 <= n <= s, got n={n}, s={s}"
        )));
    }
    let tag = stream.tag();
    let values: Vec<f64> = match beta {
        1 => {
            let v = DMatrix::<f64>::from_fn(n, s, |_, _| stream.sample(StandardNormal));
            let gram = &v * v.transpose();
            SymmetricEigen::new(gram)
                .eigenvalues
                .iter()
                .copied()
                .collect()
        }
        2 => {
            let v = DMatrix::<Complex64>::from_fn(n, s, |_, _| {
                Complex64::new(stream.sample(StandardNormal), stream.sample(StandardNormal))
            });
            let gram = &v * v.adjoint();
            SymmetricEigen::new(gram)
                .eigenvalues
                .iter()
                .copied()
                .collect()
        }
        other => {
            return Err(domain(format!(
                "Wishart oracle supports beta 1 or 2, got {other}"
            )))
        }
    };
    Ok(Spectrum::from_unsorted(values.into_iter().map(|x| x.max(0.0)).collect()).with_source(tag))
}
