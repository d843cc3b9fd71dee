//! Tridiagonal models of the β-Laguerre and β-Jacobi ensembles, the
//! deterministic matrices whose eigenvalues are the classical polynomial
//! zeros, and Monte Carlo tools for measuring how tightly random spectra
//! concentrate around those zeros.
//!
//! ```
//! use beta_ensembles::distributions::SeededStream;
//! use beta_ensembles::laguerre::{self, LaguerreParams};
//!
//! let p = LaguerreParams::new(6, 2.0, 30.0).unwrap();
//! let zeros = laguerre::polynomial_zeros(&p).unwrap();
//! let sample = laguerre::sample_spectrum(&p, &mut SeededStream::new(7, 0)).unwrap();
//! let dev = laguerre::max_scaled_deviation(&sample, &zeros, p.alpha()).unwrap();
//! assert!(dev.value < 1.0);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod concentration;
pub mod distributions;
pub mod error;
pub mod jacobi;
pub mod laguerre;
pub mod tridiag;

pub use error::{Error, Result};
