//! The β-Jacobi ensemble through its beta-chain tridiagonal model.
//!
//! A chain `Z_1 = -1, Z_2, ..., Z_{2n}` of independent symmetric-beta
//! variables builds a tridiagonal `J`; the eigenvalues of `J / 2` follow the
//! Jacobi law. Replacing every `Z_i` by its mean gives `J'`, whose halved
//! eigenvalues are the zeros of `P_n^{(2a/beta - 1, 2b/beta - 1)}`.

mod haar;
mod moments;

pub use haar::unitary_block_oracle;
pub use moments::{
    expected_moments, m1_chain_identity, m2_chain_identity, moments, mprime,
    zero_moments_closed_form, MomentPair,
};

use serde::{Deserialize, Serialize};

use crate::distributions::{sample_sym_beta, SeededStream};
use crate::error::{domain, ensure_positive, Error, Result};
use crate::tridiag::{eigenvalues, Spectrum, SymmetricTridiagonal, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    n: usize,
    beta: f64,
    a: f64,
    b: f64,
}

impl JacobiParams {
    pub fn new(n: usize, beta: f64, a: f64, b: f64) -> Result<Self> {
        if n == 0 {
            return Err(domain("Jacobi order n must be at least 1"));
        }
        ensure_positive("beta", beta)?;
        ensure_positive("a", a)?;
        ensure_positive("b", b)?;
        Ok(Self { n, beta, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `N = a + b + beta (n - 1)`.
    pub fn big_n(&self) -> f64 {
        self.a + self.b + self.beta * (self.n as f64 - 1.0)
    }

    /// Jacobi polynomial parameters `(2a/beta - 1, 2b/beta - 1)`.
    pub fn polynomial_parameters(&self) -> (f64, f64) {
        (
            2.0 * self.a / self.beta - 1.0,
            2.0 * self.b / self.beta - 1.0,
        )
    }

    /// Shapes `(k, l)` of `Z_i ~ B(k, l)`, `2 <= i <= 2n`.
    fn chain_shapes(&self, i: usize) -> (f64, f64) {
        let two_n = 2 * self.n;
        let q = self.beta / 4.0;
        if i.is_multiple_of(2) {
            let s = (two_n - i) as f64 * q;
            (self.a + s, self.b + s)
        } else {
            (
                self.a + self.b + (two_n - 1 - i) as f64 * q,
                (two_n + 1 - i) as f64 * q,
            )
        }
    }
}

/// `Z_1, ..., Z_{2n}` with `Z_1 = -1`; stored 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct ZChain {
    z: Vec<f64>,
}

impl ZChain {
    pub fn new(z: Vec<f64>) -> Result<Self> {
        if z.len() < 2 || !z.len().is_multiple_of(2) {
            return Err(domain(format!(
                "chain length must be 2n with n >= 1, got {}",
                z.len()
            )));
        }
        if z[0] != -1.0 {
            return Err(domain(format!(
                "chain must start with Z_1 = -1, got {}",
                z[0]
            )));
        }
        if let Some(i) = z.iter().position(|x| !(-1.0..=1.0).contains(x)) {
            return Err(domain(format!(
                "chain entry Z_{} = {} outside [-1, 1]",
                i + 1,
                z[i]
            )));
        }
        Ok(Self { z })
    }

    /// Matrix order `n`.
    pub fn order(&self) -> usize {
        self.z.len() / 2
    }

    /// `Z_i`, 1-based.
    pub fn get(&self, i: usize) -> f64 {
        self.z[i - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.z
    }
}

pub fn sample_z_chain(p: &JacobiParams, stream: &mut SeededStream) -> Result<ZChain> {
    let mut z = Vec::with_capacity(2 * p.n);
    z.push(-1.0);
    for i in 2..=2 * p.n {
        let (k, l) = p.chain_shapes(i);
        z.push(sample_sym_beta(k, l, stream)?.value);
    }
    ZChain::new(z)
}

/// `E Z_i`, with index 1 pinned at -1.
pub fn z_chain_means(p: &JacobiParams) -> Vec<f64> {
    let nf = p.n as f64;
    let mut means = Vec::with_capacity(2 * p.n);
    means.push(-1.0);
    for i in 2..=2 * p.n {
        let denom = p.a + p.b + (nf - i as f64 / 2.0) * p.beta;
        let num = if i % 2 == 0 {
            p.b - p.a
        } else {
            p.beta / 2.0 - p.a - p.b
        };
        means.push(num / denom);
    }
    means
}

/// `J` from a chain given 1-based accessor `z`. `Z_0` only appears multiplied
/// by `1 + Z_1 = 0` and is dropped.
fn assemble(n: usize, z: impl Fn(usize) -> f64) -> Result<SymmetricTridiagonal> {
    let diag = (1..=n)
        .map(|i| {
            let left = if i == 1 {
                0.0
            } else {
                (1.0 + z(2 * i - 1)) * z(2 * i - 2)
            };
            (1.0 - z(2 * i - 1)) * z(2 * i) - left
        })
        .collect();
    let sub = (1..n)
        .map(|i| {
            let z2 = z(2 * i);
            let radicand = (1.0 - z(2 * i - 1)) * (1.0 - z2 * z2) * (1.0 + z(2 * i + 1));
            if radicand >= 0.0 {
                Ok(radicand.sqrt())
            } else {
                Err(Error::NegativeRadicand {
                    index: i,
                    value: radicand,
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    SymmetricTridiagonal::new(diag, sub)
}

pub fn random_matrix(chain: &ZChain) -> Result<SymmetricTridiagonal> {
    assemble(chain.order(), |i| chain.get(i))
}

/// Sorted eigenvalues of `J / 2`.
pub fn sample_spectrum(p: &JacobiParams, stream: &mut SeededStream) -> Result<Spectrum> {
    let tag = stream.tag();
    let chain = sample_z_chain(p, stream)?;
    Ok(half_spectrum(&random_matrix(&chain)?)?.with_source(tag))
}

/// Eigenvalues of `j / 2`, clamped to `[-1, 1]`.
pub fn half_spectrum(j: &SymmetricTridiagonal) -> Result<Spectrum> {
    let s = eigenvalues(j, DEFAULT_TOL)?;
    Ok(Spectrum::from_unsorted(
        s.into_values()
            .into_iter()
            .map(|x| (0.5 * x).clamp(-1.0, 1.0))
            .collect(),
    ))
}

/// `J'`: the chain replaced by its means.
pub fn deterministic_matrix(p: &JacobiParams) -> Result<SymmetricTridiagonal> {
    let means = z_chain_means(p);
    assemble(p.n, |i| means[i - 1])
}

/// Zeros `y_1 < ... < y_n` of `P_n^{(2a/beta - 1, 2b/beta - 1)}`, the
/// eigenvalues of `J' / 2`.
pub fn polynomial_zeros(p: &JacobiParams) -> Result<Spectrum> {
    half_spectrum(&deterministic_matrix(p)?)
}

/// Jacobi polynomial `P_n^{(p, q)}(y)` by the standard three-term recurrence.
pub fn jacobi_eval(n: usize, p: f64, q: f64, y: f64) -> Result<f64> {
    if !(p > -1.0 && q > -1.0) {
        return Err(domain(format!(
            "Jacobi parameters must exceed -1, got p={p}, q={q}"
        )));
    }
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = (p + 1.0) + (p + q + 2.0) * (y - 1.0) / 2.0;
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + p + q;
        let a1 = 2.0 * k * (k + p + q) * (s - 2.0);
        let a2 = (s - 1.0) * (p * p - q * q);
        let a3 = (s - 2.0) * (s - 1.0) * s;
        let a4 = 2.0 * (k + p - 1.0) * (k + q - 1.0) * s;
        let next = ((a2 + a3 * y) * cur - a4 * prev) / a1;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `max_i |mu_i - y_i|` over sorted spectra.
pub fn max_deviation(sample: &Spectrum, zeros: &Spectrum) -> Result<f64> {
    sample.max_abs_gap(zeros)
}

/// `mu -> sqrt((a + b) / (2 a b n beta)) ((a + b) mu + a - b)`, the affine map
/// under which the spectrum approaches the radius-2 semicircle.
pub fn semicircle_transform(s: &Spectrum, p: &JacobiParams) -> Vec<f64> {
    let (a, b) = (p.a, p.b);
    let scale = ((a + b) / (2.0 * a * b * p.n as f64 * p.beta)).sqrt();
    s.values()
        .iter()
        .map(|&mu| scale * ((a + b) * mu + a - b))
        .collect()
}
