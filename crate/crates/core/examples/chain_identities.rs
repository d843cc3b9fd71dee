//! First and shifted second moments from the chain alone, checked against
//! the spectrum of the assembled matrix.

use beta_ensembles::distributions::SeededStream;
use beta_ensembles::jacobi::{self, JacobiParams};

fn main() -> beta_ensembles::Result<()> {
    let p = JacobiParams::new(6, 1.5, 4.0, 9.0)?;
    for r in 0..5 {
        let chain = jacobi::sample_z_chain(&p, &mut SeededStream::new(12, r))?;
        let spectrum = jacobi::half_spectrum(&jacobi::random_matrix(&chain)?)?;
        let m = jacobi::moments(&spectrum, &p);
        println!(
            "M1 {:+.15} / {:+.15}   M2 {:.15} / {:.15}   M' {:+.3e}",
            m.m1,
            jacobi::m1_chain_identity(&chain),
            m.m2,
            jacobi::m2_chain_identity(&chain, &p)?,
            jacobi::mprime(&chain)
        );
    }
    Ok(())
}
