//! Replicate `r` always reads stream `(seed, r)`, so results do not depend on
//! how many threads share the work.

use beta_ensembles::concentration::{deviation_samples, EnsembleCell};
use beta_ensembles::laguerre::LaguerreParams;

fn main() -> beta_ensembles::Result<()> {
    let cell = EnsembleCell::Laguerre(LaguerreParams::new(10, 1.0, 25.0)?);
    let mut runs = Vec::new();
    for threads in [1, 2, 8] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("pool");
        let xs = pool.install(|| deviation_samples(&cell, 2_000, 42))?;
        let digest = xs.iter().fold(0u64, |h, x| h.rotate_left(5) ^ x.to_bits());
        println!(
            "{threads} thread(s): first {:.12}, bit digest {digest:016x}",
            xs[0]
        );
        runs.push(xs);
    }
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
    Ok(())
}
