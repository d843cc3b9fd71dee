//! Jacobi zeros from the mean chain, with the closed-form mean and variance.
//!
//! `cargo run --example jacobi_zeros -- 5 2.0 3.0 7.0`

use beta_ensembles::jacobi::{self, JacobiParams};

fn main() -> beta_ensembles::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("number"))
        .collect();
    let n = args.first().map_or(5, |&x| x as usize);
    let beta = args.get(1).copied().unwrap_or(2.0);
    let a = args.get(2).copied().unwrap_or(3.0);
    let b = args.get(3).copied().unwrap_or(7.0);

    let p = JacobiParams::new(n, beta, a, b)?;
    let (pp, qq) = p.polynomial_parameters();
    let zeros = jacobi::polynomial_zeros(&p)?;
    println!("zeros of P_{n}^({pp}, {qq}):");
    for &y in zeros.values() {
        println!(
            "  {y:>+14.10}   P(y) = {:+.2e}",
            jacobi::jacobi_eval(n, pp, qq, y)?
        );
    }
    let (y1, y2) = jacobi::zero_moments_closed_form(&p)?;
    println!("mean     {:+.15}  closed form {:+.15}", zeros.mean(), y1);
    println!(
        "variance {:+.15}  closed form {:+.15}",
        zeros.variance(),
        y2
    );
    Ok(())
}
