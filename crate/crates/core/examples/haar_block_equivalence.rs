//! The beta = 2 Jacobi chain model against singular values of a Haar
//! unitary block.

use beta_ensembles::distributions::SeededStream;
use beta_ensembles::jacobi::{self, JacobiParams};

fn main() -> beta_ensembles::Result<()> {
    let (n, a, b) = (2usize, 2u32, 3u32);
    let p = JacobiParams::new(n, 2.0, a as f64, b as f64)?;
    let reps = 50_000u64;
    let mut chain = [0.0; 2];
    let mut haar = [0.0; 2];
    for r in 0..reps {
        let s = jacobi::sample_spectrum(&p, &mut SeededStream::new(1, r))?;
        let u = jacobi::unitary_block_oracle(n, a, b, &mut SeededStream::new(2, r))?;
        for (acc, spec) in [(&mut chain, &s), (&mut haar, &u)] {
            acc[0] += spec.mean();
            acc[1] += spec.values().iter().map(|x| x * x).sum::<f64>() / n as f64;
        }
    }
    let k = reps as f64;
    println!(
        "E M1  chain {:+.4}  Haar {:+.4}  exact {:+.4}",
        chain[0] / k,
        haar[0] / k,
        jacobi::expected_moments(&p).0
    );
    println!("E mu^2 chain {:.4}  Haar {:.4}", chain[1] / k, haar[1] / k);
    Ok(())
}
