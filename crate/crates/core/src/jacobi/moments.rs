//! First and shifted second moments of the Jacobi spectrum, their closed
//! forms, and the chain expansions of both moments.

use super::{JacobiParams, ZChain};
use crate::error::{Error, Result};
use crate::tridiag::Spectrum;

/// `M_1 = mean(mu)`, `M_2 = mean((mu - E M_1)^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentPair {
    pub m1: f64,
    pub m2: f64,
}

/// The shift in `m2` is the exact `E M_1 = (b - a) / N`, not the sample mean.
pub fn moments(s: &Spectrum, p: &JacobiParams) -> MomentPair {
    let shift = (p.b - p.a) / p.big_n();
    let n = s.len() as f64;
    MomentPair {
        m1: s.values().iter().sum::<f64>() / n,
        m2: s
            .values()
            .iter()
            .map(|mu| (mu - shift).powi(2))
            .sum::<f64>()
            / n,
    }
}

/// `(E M_1, leading term of E M_2)`; the `O(1/N)` remainder of `E M_2` is not
/// included.
pub fn expected_moments(p: &JacobiParams) -> (f64, f64) {
    let big_n = p.big_n();
    let bn = p.beta * p.n as f64;
    (
        (p.b - p.a) / big_n,
        bn * (2.0 * p.a + bn) * (2.0 * p.b + bn) / (2.0 * big_n.powi(3)),
    )
}

/// Mean `Y_1` and variance `Y_2` of the Jacobi polynomial zeros.
pub fn zero_moments_closed_form(p: &JacobiParams) -> Result<(f64, f64)> {
    let big_n = p.big_n();
    let y1 = (p.b - p.a) / big_n;
    if p.n == 1 {
        return Ok((y1, 0.0));
    }
    let denom = 2.0 * big_n - p.beta;
    if denom <= 0.0 {
        return Err(Error::DegenerateDenominator(format!(
            "2N - beta = {denom} <= 0"
        )));
    }
    let m = p.beta * (p.n as f64 - 1.0);
    Ok((
        y1,
        m * (2.0 * p.a + m) * (2.0 * p.b + m) / (big_n * big_n * denom),
    ))
}

/// `M_1` from the chain: `(Z_{2n} - sum_{i=2}^{2n} Z_{i-1} Z_i) / 2n`.
pub fn m1_chain_identity(chain: &ZChain) -> f64 {
    let z = chain.values();
    let two_n = z.len();
    let cross: f64 = z.windows(2).map(|w| w[0] * w[1]).sum();
    (z[two_n - 1] - cross) / two_n as f64
}

/// `M' = (1/4n) sum_{i=3}^{2n} (2 Z_{i-2} (Z_{i-1}^2 - 1) Z_i + Z_{i-1}^2 Z_i^2)`.
pub fn mprime(chain: &ZChain) -> f64 {
    let z = chain.values();
    let sum: f64 = z
        .windows(3)
        .map(|w| {
            let mid2 = w[1] * w[1];
            2.0 * w[0] * (mid2 - 1.0) * w[2] + mid2 * w[2] * w[2]
        })
        .sum();
    sum / (2 * z.len()) as f64
}

/// `M_2` from the chain, centred at `Y_1 = (b - a) / N`.
pub fn m2_chain_identity(chain: &ZChain, p: &JacobiParams) -> Result<f64> {
    let n = chain.order();
    if n != p.n {
        return Err(Error::LengthMismatch {
            expected: p.n,
            found: n,
        });
    }
    let y1 = (p.b - p.a) / p.big_n();
    let m1 = m1_chain_identity(chain);
    let z2 = chain.get(2);
    let zl = chain.get(2 * n);
    let zl1 = chain.get(2 * n - 1);
    let boundary = (2.0 * zl1 * (1.0 - zl * zl) + z2 * z2 + zl * zl) / (4 * n) as f64;
    Ok(y1 * y1 - 2.0 * y1 * m1 + 0.5 + boundary + mprime(chain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::SeededStream;
    use crate::jacobi::{polynomial_zeros, random_matrix, sample_z_chain};
    use crate::tridiag::{eigenvalues, DEFAULT_TOL};
    use rand::Rng;

    fn random_chain(n: usize, stream: &mut SeededStream) -> ZChain {
        let mut z = vec![-1.0];
        z.extend((1..2 * n).map(|_| stream.random_range(-1.0..=1.0)));
        ZChain::new(z).unwrap()
    }

    fn spectral_moments(chain: &ZChain, p: &JacobiParams) -> MomentPair {
        let j = random_matrix(chain).unwrap();
        let s = eigenvalues(&j, DEFAULT_TOL).unwrap();
        let half = Spectrum::from_unsorted(s.values().iter().map(|x| 0.5 * x).collect());
        moments(&half, p)
    }

    #[test]
    fn moments_small_cases() {
        let p = JacobiParams::new(3, 1.0, 2.0, 4.0).unwrap();
        let shift = 2.0 / 8.0;
        let s = Spectrum::from_unsorted(vec![shift; 3]);
        let m = moments(&s, &p);
        assert!((m.m1 - shift).abs() < 1e-15 && m.m2 == 0.0);

        let p1 = JacobiParams::new(1, 1.0, 2.0, 4.0).unwrap();
        let s = Spectrum::from_unsorted(vec![0.7]);
        let m = moments(&s, &p1);
        assert_eq!(m.m1, 0.7);
        assert!((m.m2 - (0.7f64 - 2.0 / 6.0).powi(2)).abs() < 1e-15);
    }

    #[test]
    fn expected_moments_small_cases() {
        let p = JacobiParams::new(5, 1.0, 3.0, 3.0).unwrap();
        assert_eq!(expected_moments(&p).0, 0.0);
        let p = JacobiParams::new(1, 0.37, 2.0, 5.0).unwrap();
        assert!((expected_moments(&p).0 - 3.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_legendre_and_n1() {
        let p = JacobiParams::new(2, 2.0, 1.0, 1.0).unwrap();
        let (y1, y2) = zero_moments_closed_form(&p).unwrap();
        assert_eq!(y1, 0.0);
        assert!((y2 - 1.0 / 3.0).abs() < 1e-15);
        let p = JacobiParams::new(1, 2.0, 1.0, 4.0).unwrap();
        assert_eq!(zero_moments_closed_form(&p).unwrap().1, 0.0);
    }

    #[test]
    fn closed_form_variance_identity() {
        for n in 2..=12 {
            for &beta in &[0.5, 1.0, 2.0, 4.0] {
                for &(a, b) in &[(0.5, 1.0), (5.0, 0.5), (50.0, 5.0), (1.0, 1.0)] {
                    let p = JacobiParams::new(n, beta, a, b).unwrap();
                    let (y1, y2) = zero_moments_closed_form(&p).unwrap();
                    let alt = beta * (n as f64 - 1.0) * (1.0 - y1 * y1) / (2.0 * p.big_n() - beta);
                    assert!((y2 - alt).abs() <= 1e-12 * y2.abs().max(1e-300));
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_zeros() {
        for n in 1..=12 {
            for &beta in &[0.5, 2.0] {
                let p = JacobiParams::new(n, beta, 1.0, 5.0).unwrap();
                let z = polynomial_zeros(&p).unwrap();
                let (y1, y2) = zero_moments_closed_form(&p).unwrap();
                assert!((z.mean() - y1).abs() < 1e-9 * y1.abs().max(1e-3));
                assert!((z.variance() - y2).abs() < 1e-9 * y2.max(1e-3));
            }
        }
    }

    #[test]
    fn m1_identity_cases() {
        let c = ZChain::new(vec![-1.0, 0.42]).unwrap();
        assert!((m1_chain_identity(&c) - 0.42).abs() < 1e-15);
        let mut z = vec![0.0; 8];
        z[0] = -1.0;
        assert_eq!(m1_chain_identity(&ZChain::new(z).unwrap()), 0.0);
    }

    #[test]
    fn chain_identities_match_spectrum() {
        let mut s = SeededStream::new(21, 0);
        for n in 1..=16 {
            let p = JacobiParams::new(n, 1.0, 2.0, 3.0).unwrap();
            for _ in 0..20 {
                let chain = random_chain(n, &mut s);
                let m = spectral_moments(&chain, &p);
                assert!((m1_chain_identity(&chain) - m.m1).abs() < 1e-12);
                assert!((m2_chain_identity(&chain, &p).unwrap() - m.m2).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn m2_identity_n1_reduces_to_square() {
        let p = JacobiParams::new(1, 2.0, 1.0, 2.0).unwrap();
        let y1 = 1.0 / 3.0;
        let c = ZChain::new(vec![-1.0, -0.25]).unwrap();
        assert!((m2_chain_identity(&c, &p).unwrap() - (-0.25f64 - y1).powi(2)).abs() < 1e-15);
        let q = JacobiParams::new(2, 2.0, 1.0, 2.0).unwrap();
        assert!(m2_chain_identity(&c, &q).is_err());
    }

    #[test]
    fn mprime_vanishes_on_zero_chain() {
        let mut z = vec![0.0; 10];
        z[0] = -1.0;
        assert_eq!(mprime(&ZChain::new(z).unwrap()), 0.0);
    }

    #[test]
    fn sampled_m1_mean_matches_expectation() {
        let p = JacobiParams::new(3, 1.0, 2.0, 5.0).unwrap();
        let draws = 100_000u64;
        let xs: Vec<f64> = (0..draws)
            .map(|r| m1_chain_identity(&sample_z_chain(&p, &mut SeededStream::new(22, r)).unwrap()))
            .collect();
        let m = xs.iter().sum::<f64>() / draws as f64;
        let sd = (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / draws as f64).sqrt();
        let want = expected_moments(&p).0;
        assert!(
            (m - want).abs() < 3.0 * sd / (draws as f64).sqrt(),
            "{m} vs {want}"
        );
    }
}
