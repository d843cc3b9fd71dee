//! Chi and symmetric-beta variates, their tail bounds, and the seeded
//! streams every sampler in the crate draws from.
//!
//! Streams are counter based: a `(master_seed, stream_index)` pair selects one
//! ChaCha8 keystream, so replicate `i` of an experiment sees the same numbers no
//! matter which worker runs it or in which order.

mod bounds;
pub mod calibration;
mod gamma;

pub use bounds::{
    chi_tail_bound, product_difference_bound, sym_beta_sqrt_shift_bound, sym_beta_tail_bound,
};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Result};

/// Identity of a stream, detached from its generator state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StreamTag {
    pub master_seed: u64,
    pub stream_index: u64,
}

/// A reproducible random stream keyed by `(master_seed, stream_index)`.
#[derive(Debug, Clone)]
pub struct SeededStream {
    tag: StreamTag,
    rng: ChaCha8Rng,
}

impl SeededStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_index);
        Self {
            tag: StreamTag {
                master_seed,
                stream_index,
            },
            rng,
        }
    }

    pub fn tag(&self) -> StreamTag {
        self.tag
    }

    pub fn master_seed(&self) -> u64 {
        self.tag.master_seed
    }

    pub fn stream_index(&self) -> u64 {
        self.tag.stream_index
    }
}

impl RngCore for SeededStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Mixes a master seed with a label (cell index, experiment id) into a fresh
/// master seed. SplitMix64 finalizer.
pub fn derive_seed(master_seed: u64, label: u64) -> u64 {
    let mut z = master_seed.wrapping_add(label.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `X` with `X^2 ~ chi^2_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiVariate {
    pub dof: f64,
    pub value: f64,
}

impl ChiVariate {
    pub fn squared(&self) -> f64 {
        self.value * self.value
    }
}

/// `Z` on `[-1, 1]` with density proportional to `(1-z)^(k-1) (1+z)^(l-1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymBetaVariate {
    pub k: f64,
    pub l: f64,
    pub value: f64,
}

impl SymBetaVariate {
    pub fn mean(k: f64, l: f64) -> f64 {
        (l - k) / (k + l)
    }
}

/// Draws a chi variate with `k` (possibly non-integer) degrees of freedom.
pub fn sample_chi(k: f64, stream: &mut SeededStream) -> Result<ChiVariate> {
    ensure_positive("chi degrees of freedom", k)?;
    let g = gamma::sample_gamma(0.5 * k, stream);
    Ok(ChiVariate {
        dof: k,
        value: (2.0 * g).sqrt(),
    })
}

/// Shape ratio above which the beta draw is assembled in log space.
const LOG_SPACE_RATIO: f64 = 1e6;

/// Draws `Z ~ B(k, l)` on `[-1, 1]`, i.e. `Z = 2U - 1` with `U ~ Beta(l, k)`.
pub fn sample_sym_beta(k: f64, l: f64, stream: &mut SeededStream) -> Result<SymBetaVariate> {
    ensure_positive("beta shape k", k)?;
    ensure_positive("beta shape l", l)?;
    let ratio = k.max(l) / k.min(l);
    let u = if ratio > LOG_SPACE_RATIO || k.min(l) < 1.0 {
        let ln_x = gamma::sample_ln_gamma(l, stream);
        let ln_y = gamma::sample_ln_gamma(k, stream);
        1.0 / (1.0 + (ln_y - ln_x).exp())
    } else {
        let x = gamma::sample_gamma(l, stream);
        let y = gamma::sample_gamma(k, stream);
        x / (x + y)
    };
    Ok(SymBetaVariate {
        k,
        l,
        value: (2.0 * u - 1.0).clamp(-1.0, 1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::distribution::{Beta, ChiSquared, ContinuousCDF};

    fn ks_distance(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
        xs.sort_by(f64::total_cmp);
        let n = xs.len() as f64;
        xs.iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = cdf(x);
                (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn chi_square_mean_at_k5() {
        let mut s = SeededStream::new(1, 0);
        let draws = 100_000;
        let mean = (0..draws)
            .map(|_| sample_chi(5.0, &mut s).unwrap().squared())
            .sum::<f64>()
            / draws as f64;
        assert!((mean - 5.0).abs() < 3.0 * (2.0 * 5.0 / draws as f64).sqrt());
    }

    #[test]
    fn chi_square_variance_at_k8() {
        let mut s = SeededStream::new(2, 0);
        let xs: Vec<f64> = (0..100_000)
            .map(|_| sample_chi(8.0, &mut s).unwrap().squared())
            .collect();
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        assert!((v / 16.0 - 1.0).abs() < 0.10, "variance {v}");
    }

    #[test]
    fn same_stream_same_values() {
        let mut a = SeededStream::new(99, 7);
        let mut b = SeededStream::new(99, 7);
        for _ in 0..50 {
            assert_eq!(
                sample_chi(3.3, &mut a).unwrap().value.to_bits(),
                sample_chi(3.3, &mut b).unwrap().value.to_bits()
            );
            assert_eq!(
                sample_sym_beta(0.7, 4.0, &mut a).unwrap().value.to_bits(),
                sample_sym_beta(0.7, 4.0, &mut b).unwrap().value.to_bits()
            );
        }
    }

    #[test]
    fn distinct_stream_indices_differ() {
        let mut a = SeededStream::new(99, 0);
        let mut b = SeededStream::new(99, 1);
        let xa: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let xb: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_ne!(xa, xb);
    }

    #[test]
    fn rejects_non_positive_parameters() {
        let mut s = SeededStream::new(0, 0);
        assert!(sample_chi(0.0, &mut s).is_err());
        assert!(sample_chi(-1.0, &mut s).is_err());
        assert!(sample_sym_beta(0.0, 1.0, &mut s).is_err());
        assert!(sample_sym_beta(1.0, -2.0, &mut s).is_err());
    }

    #[test]
    fn sym_beta_mean_at_3_7() {
        let mut s = SeededStream::new(3, 0);
        let xs: Vec<f64> = (0..100_000)
            .map(|_| sample_sym_beta(3.0, 7.0, &mut s).unwrap().value)
            .collect();
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        let sd = (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / xs.len() as f64).sqrt();
        let se = sd / (xs.len() as f64).sqrt();
        assert!((m - 0.4).abs() < 3.0 * se, "mean {m}");
    }

    #[test]
    fn sym_beta_symmetric_mean_is_zero() {
        let mut s = SeededStream::new(4, 0);
        let xs: Vec<f64> = (0..100_000)
            .map(|_| sample_sym_beta(6.0, 6.0, &mut s).unwrap().value)
            .collect();
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        let sd = (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / xs.len() as f64).sqrt();
        assert!(m.abs() < 3.0 * sd / (xs.len() as f64).sqrt());
    }

    #[test]
    fn sym_beta_support() {
        let mut s = SeededStream::new(5, 0);
        for _ in 0..100_000 {
            let z = sample_sym_beta(0.5, 0.5, &mut s).unwrap().value;
            assert!((-1.0..=1.0).contains(&z));
        }
    }

    #[test]
    fn extreme_asymmetry_is_finite_and_near_minus_one() {
        let mut s = SeededStream::new(6, 0);
        let k = 1e9;
        let l = 2.0;
        let mut sum = 0.0;
        for _ in 0..10_000 {
            let z = sample_sym_beta(k, l, &mut s).unwrap().value;
            assert!(z.is_finite() && (-1.0..=1.0).contains(&z));
            sum += z;
        }
        let mean = sum / 10_000.0;
        assert!((mean - SymBetaVariate::mean(k, l)).abs() < 1e-6);
    }

    #[test]
    fn chi_square_ks_against_analytic_cdf() {
        for &k in &[1.0, 4.0, 9.0] {
            let mut s = SeededStream::new(7, k as u64);
            let xs = (0..100_000)
                .map(|_| sample_chi(k, &mut s).unwrap().squared())
                .collect();
            let dist = ChiSquared::new(k).unwrap();
            let d = ks_distance(xs, |x| dist.cdf(x));
            assert!(d < 0.01, "k={k}: KS {d}");
        }
    }

    #[test]
    fn sym_beta_ks_against_analytic_cdf() {
        for &(k, l) in &[(0.5, 0.5), (3.0, 7.0), (40.0, 2.0)] {
            let mut s = SeededStream::new(8, 0);
            let xs = (0..100_000)
                .map(|_| sample_sym_beta(k, l, &mut s).unwrap().value)
                .collect();
            let dist = Beta::new(l, k).unwrap();
            let d = ks_distance(xs, |z| dist.cdf(((z + 1.0) / 2.0).clamp(0.0, 1.0)));
            assert!(d < 0.01, "(k,l)=({k},{l}): KS {d}");
        }
    }

    #[test]
    fn derived_seeds_are_distinct() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| derive_seed(42, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }
}
