use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::distributions::SeededStream;
use crate::error::{domain, Result};
use crate::tridiag::Spectrum;

/// Haar-random `d x d` unitary: QR of a complex Ginibre matrix with the
/// diagonal of `R` rotated onto the positive reals.
pub(crate) fn haar_unitary(d: usize, stream: &mut SeededStream) -> DMatrix<Complex64> {
    let g = DMatrix::<Complex64>::from_fn(d, d, |_, _| {
        Complex64::new(stream.sample(StandardNormal), stream.sample(StandardNormal))
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let norm = rjj.norm();
        let phase = if norm > 0.0 {
            rjj / norm
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// β = 2 Jacobi spectrum from the `n x (n + b - 1)` top-left block of a Haar
/// unitary of dimension `2n + a + b - 2`: `mu_i = 2 sigma_i^2 - 1`.
pub fn unitary_block_oracle(
    n: usize,
    a: u32,
    b: u32,
    stream: &mut SeededStream,
) -> Result<Spectrum> {
    if n == 0 || a == 0 || b == 0 {
        return Err(domain(format!(
            "unitary block oracle needs n, a, b >= 1, got n={n}, a={a}, b={b}"
        )));
    }
    let (a, b) = (a as usize, b as usize);
    let d = 2 * n + a + b - 2;
    let cols = n + b - 1;
    let tag = stream.tag();
    let u = haar_unitary(d, stream);
    let block = u.view((0, 0), (n, cols)).into_owned();
    let gram = &block * block.adjoint();
    let sq: Vec<f64> = SymmetricEigen::new(gram)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    Ok(Spectrum::from_unsorted(
        sq.into_iter()
            .map(|s2| (2.0 * s2 - 1.0).clamp(-1.0, 1.0))
            .collect(),
    )
    .with_source(tag))
}
