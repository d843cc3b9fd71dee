//! Laguerre zeros as eigenvalues of the deterministic tridiagonal matrix.
//!
//! `cargo run --example laguerre_zeros -- 6 2.0 30.0`

use beta_ensembles::laguerre::{self, LaguerreParams};

fn main() -> beta_ensembles::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().map_or(6, |s| s.parse().expect("n"));
    let beta = args.get(1).map_or(2.0, |s| s.parse().expect("beta"));
    let alpha = args.get(2).map_or(30.0, |s| s.parse().expect("alpha"));

    let p = LaguerreParams::new(n, beta, alpha)?;
    let zeros = laguerre::polynomial_zeros(&p)?;
    let q = p.polynomial_parameter();
    println!("zeros of L_{n}^({q})(x/{beta}):");
    for &x in zeros.values() {
        println!(
            "  {x:>14.10}   L(x/beta) = {:+.2e}",
            laguerre::laguerre_eval(n, q, x / beta)?
        );
    }
    println!("mean {:.12} (2 alpha = {})", zeros.mean(), 2.0 * alpha);
    let (lo, hi) = laguerre::zero_interval(n, q)?;
    println!(
        "interval [{:.6}, {:.6}] scaled by beta",
        beta * lo,
        beta * hi
    );
    Ok(())
}
