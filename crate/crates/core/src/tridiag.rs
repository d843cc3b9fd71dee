//! Symmetric tridiagonal matrices and their spectra.
//!
//! Eigenvalues come from Sturm-sequence bisection on the `LDL^T` pivots of
//! `T - xI`, finished by one guarded Newton step on the characteristic
//! recurrence. Zero subdiagonal entries split the matrix into blocks that are
//! solved independently.

use nalgebra::DMatrix;

use crate::distributions::StreamTag;
use crate::error::{domain, Error, Result};

/// Default relative tolerance for [`eigenvalues`].
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTridiagonal {
    diag: Vec<f64>,
    sub: Vec<f64>,
}

impl SymmetricTridiagonal {
    /// `diag` has length `n >= 1`, `sub` has length `n - 1`; `sub[i]` couples
    /// rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, sub: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(domain("tridiagonal matrix must have order n >= 1"));
        }
        if sub.len() + 1 != diag.len() {
            return Err(Error::LengthMismatch {
                expected: diag.len() - 1,
                found: sub.len(),
            });
        }
        if let Some(i) = diag.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!("diag[{i}]")));
        }
        if let Some(i) = sub.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!("sub[{i}]")));
        }
        Ok(Self { diag, sub })
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn sub(&self) -> &[f64] {
        &self.sub
    }

    /// Multiplies every entry by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.diag.iter().map(|d| d * factor).collect(),
            self.sub.iter().map(|e| e * factor).collect(),
        )
    }

    /// Leading principal `k x k` submatrix.
    pub fn leading(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.order() {
            return Err(domain(format!(
                "leading block order {k} out of 1..={}",
                self.order()
            )));
        }
        Self::new(self.diag[..k].to_vec(), self.sub[..k - 1].to_vec())
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.order();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
        }
        for (i, &e) in self.sub.iter().enumerate() {
            m[(i + 1, i)] = e;
            m[(i, i + 1)] = e;
        }
        m
    }

    /// Gershgorin enclosure `[lo, hi]` of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        gershgorin(&self.diag, &self.sub)
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }
}

/// Sorted eigenvalues, optionally tagged with the stream that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    source: Option<StreamTag>,
}

impl Spectrum {
    /// Sorts `values` ascending.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Self {
            values,
            source: None,
        }
    }

    pub fn with_source(mut self, tag: StreamTag) -> Self {
        self.source = Some(tag);
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn source(&self) -> Option<StreamTag> {
        self.source
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Population variance `(1/n) sum (x - mean)^2`.
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.values.iter().map(|x| (x - m).powi(2)).sum::<f64>() / self.values.len() as f64
    }

    /// Largest pointwise gap between two sorted spectra of equal length.
    pub fn max_abs_gap(&self, other: &Spectrum) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

fn gershgorin(diag: &[f64], sub: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { sub[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { sub[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    (lo, hi)
}

/// Number of eigenvalues strictly below `x`.
fn sturm_count(diag: &[f64], sub: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        q = diag[i] - x - sub[i - 1] * sub[i - 1] / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// `p'(x) / p(x)` for the characteristic polynomial of the block, accumulated
/// through the pivots. `None` when a pivot vanishes.
fn log_derivative(diag: &[f64], sub: &[f64], x: f64) -> Option<f64> {
    let mut q = diag[0] - x;
    let mut dq = -1.0;
    if q == 0.0 {
        return None;
    }
    let mut acc = dq / q;
    for i in 1..diag.len() {
        let e2 = sub[i - 1] * sub[i - 1];
        let nq = diag[i] - x - e2 / q;
        let ndq = -1.0 + e2 * dq / (q * q);
        if nq == 0.0 || !nq.is_finite() {
            return None;
        }
        q = nq;
        dq = ndq;
        acc += dq / q;
    }
    acc.is_finite().then_some(acc)
}

fn block_eigenvalues(diag: &[f64], sub: &[f64], tol: f64, out: &mut Vec<f64>) {
    let n = diag.len();
    if n == 1 {
        out.push(diag[0]);
        return;
    }
    let (glo, ghi) = gershgorin(diag, sub);
    let scale = glo.abs().max(ghi.abs()).max(1.0);
    let max_e2 = sub.iter().map(|e| e * e).fold(0.0, f64::max);
    let pivmin = f64::MIN_POSITIVE * max_e2.max(1.0);
    let width_tol = tol * scale;
    let lo0 = glo - f64::EPSILON * scale;
    let hi0 = ghi + f64::EPSILON * scale;

    for k in 0..n {
        let (mut a, mut b) = (lo0, hi0);
        loop {
            let mid = 0.5 * (a + b);
            if b - a <= width_tol || mid <= a || mid >= b {
                break;
            }
            if sturm_count(diag, sub, mid, pivmin) > k {
                b = mid;
            } else {
                a = mid;
            }
        }
        let mut x = 0.5 * (a + b);
        if let Some(ld) = log_derivative(diag, sub, x) {
            if ld != 0.0 {
                let polished = x - 1.0 / ld;
                if polished >= a && polished <= b {
                    x = polished;
                }
            }
        }
        out.push(x);
    }
}

/// All eigenvalues of `t`, sorted ascending, each within
/// `tol * max(1, spectral radius)` of the exact value.
pub fn eigenvalues(t: &SymmetricTridiagonal, tol: f64) -> Result<Spectrum> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(domain(format!(
            "eigenvalue tolerance must be positive, got {tol}"
        )));
    }
    let (diag, sub) = (&t.diag, &t.sub);
    let mut values = Vec::with_capacity(t.order());
    let mut start = 0;
    for i in 0..sub.len() {
        if sub[i] == 0.0 {
            block_eigenvalues(&diag[start..=i], &sub[start..i], tol, &mut values);
            start = i + 1;
        }
    }
    block_eigenvalues(&diag[start..], &sub[start..], tol, &mut values);
    Ok(Spectrum::from_unsorted(values))
}

pub fn trace(t: &SymmetricTridiagonal) -> f64 {
    t.trace()
}

/// Maximal absolute row sum of `t1 - t2`; dominates the largest shift of any
/// sorted eigenvalue (Weyl).
pub fn entrywise_norm_bound(t1: &SymmetricTridiagonal, t2: &SymmetricTridiagonal) -> Result<f64> {
    if t1.order() != t2.order() {
        return Err(Error::LengthMismatch {
            expected: t1.order(),
            found: t2.order(),
        });
    }
    let n = t1.order();
    let dsub: Vec<f64> = t1
        .sub
        .iter()
        .zip(&t2.sub)
        .map(|(a, b)| (a - b).abs())
        .collect();
    Ok((0..n)
        .map(|i| {
            let above = if i > 0 { dsub[i - 1] } else { 0.0 };
            let below = if i + 1 < n { dsub[i] } else { 0.0 };
            above + (t1.diag[i] - t2.diag[i]).abs() + below
        })
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::SymmetricEigen;
    use proptest::prelude::*;

    fn dense_oracle(t: &SymmetricTridiagonal) -> Vec<f64> {
        let mut v: Vec<f64> = SymmetricEigen::new(t.to_dense())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn one_by_one() {
        let t = SymmetricTridiagonal::new(vec![10.0], vec![]).unwrap();
        assert_eq!(eigenvalues(&t, DEFAULT_TOL).unwrap().values(), &[10.0]);
    }

    #[test]
    fn two_by_two_analytic() {
        let (a, b) = (1.5, -0.75);
        let t = SymmetricTridiagonal::new(vec![a, a], vec![b]).unwrap();
        let s = eigenvalues(&t, DEFAULT_TOL).unwrap();
        assert!((s.values()[0] - (a - b.abs())).abs() < 1e-13);
        assert!((s.values()[1] - (a + b.abs())).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            SymmetricTridiagonal::new(vec![1.0, f64::NAN], vec![0.0]),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            SymmetricTridiagonal::new(vec![1.0, 2.0], vec![]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(SymmetricTridiagonal::new(vec![], vec![]).is_err());
        let t = SymmetricTridiagonal::new(vec![1.0], vec![]).unwrap();
        assert!(eigenvalues(&t, 0.0).is_err());
    }

    #[test]
    fn splits_on_zero_subdiagonal() {
        let t = SymmetricTridiagonal::new(vec![3.0, 1.0, 2.0, 2.0], vec![0.0, 0.0, 1.0]).unwrap();
        let s = eigenvalues(&t, DEFAULT_TOL).unwrap();
        let expect = [1.0, 1.0, 3.0, 3.0];
        for (x, e) in s.values().iter().zip(expect) {
            assert!((x - e).abs() < 1e-12, "{:?}", s.values());
        }
    }

    #[test]
    fn repeated_eigenvalues_returned_by_count() {
        let t = SymmetricTridiagonal::new(vec![2.0; 5], vec![0.0; 4]).unwrap();
        let s = eigenvalues(&t, DEFAULT_TOL).unwrap();
        assert_eq!(s.values(), &[2.0; 5]);
    }

    #[test]
    fn trace_and_norm_bound_small_cases() {
        let t = SymmetricTridiagonal::new(vec![4.0], vec![]).unwrap();
        assert_eq!(trace(&t), 4.0);
        let u = SymmetricTridiagonal::new(vec![1.5], vec![]).unwrap();
        assert_eq!(entrywise_norm_bound(&t, &u).unwrap(), 2.5);
        assert_eq!(entrywise_norm_bound(&t, &t).unwrap(), 0.0);
        let w = SymmetricTridiagonal::new(vec![1.0, 2.0], vec![1.0]).unwrap();
        assert!(entrywise_norm_bound(&t, &w).is_err());
    }

    fn matrix_strategy(max_n: usize) -> impl Strategy<Value = SymmetricTridiagonal> {
        (1..=max_n).prop_flat_map(|n| {
            (
                proptest::collection::vec(-5.0f64..5.0, n),
                proptest::collection::vec(-3.0f64..3.0, n - 1),
            )
                .prop_map(|(d, e)| SymmetricTridiagonal::new(d, e).unwrap())
        })
    }

    proptest! {
        #[test]
        fn agrees_with_dense_oracle(t in matrix_strategy(12)) {
            let s = eigenvalues(&t, DEFAULT_TOL).unwrap();
            let oracle = dense_oracle(&t);
            let (lo, hi) = t.gershgorin();
            let scale = lo.abs().max(hi.abs()).max(1.0);
            for (x, y) in s.values().iter().zip(&oracle) {
                prop_assert!((x - y).abs() <= 1e-10 * scale);
            }
            prop_assert!((s.values().iter().sum::<f64>() - trace(&t)).abs() <= 1e-10 * scale * t.order() as f64);
        }

        #[test]
        fn gershgorin_contains_spectrum(t in matrix_strategy(12)) {
            let s = eigenvalues(&t, DEFAULT_TOL).unwrap();
            let radius = (0..t.order()).map(|i| {
                let left = if i > 0 { t.sub()[i - 1].abs() } else { 0.0 };
                let right = if i + 1 < t.order() { t.sub()[i].abs() } else { 0.0 };
                t.diag()[i].abs() + left + right
            }).fold(0.0, f64::max);
            for x in s.values() {
                prop_assert!(x.abs() <= radius * (1.0 + 1e-12));
            }
        }

        #[test]
        fn interlacing_under_leading_blocks(t in matrix_strategy(8)) {
            let n = t.order();
            prop_assume!(n >= 2);
            let full = eigenvalues(&t, DEFAULT_TOL).unwrap();
            let part = eigenvalues(&t.leading(n - 1).unwrap(), DEFAULT_TOL).unwrap();
            let slack = 1e-10 * t.gershgorin().1.abs().max(t.gershgorin().0.abs()).max(1.0);
            for i in 0..n - 1 {
                prop_assert!(full.values()[i] <= part.values()[i] + slack);
                prop_assert!(part.values()[i] <= full.values()[i + 1] + slack);
            }
        }

        #[test]
        fn weyl_bound_dominates(
            (t1, t2) in (2usize..=6).prop_flat_map(|n| (
                proptest::collection::vec(-5.0f64..5.0, n),
                proptest::collection::vec(-3.0f64..3.0, n - 1),
                proptest::collection::vec(-5.0f64..5.0, n),
                proptest::collection::vec(-3.0f64..3.0, n - 1),
            )).prop_map(|(a, b, c, d)| (
                SymmetricTridiagonal::new(a, b).unwrap(),
                SymmetricTridiagonal::new(c, d).unwrap(),
            ))
        ) {
            let gap = eigenvalues(&t1, DEFAULT_TOL).unwrap()
                .max_abs_gap(&eigenvalues(&t2, DEFAULT_TOL).unwrap()).unwrap();
            prop_assert!(gap <= entrywise_norm_bound(&t1, &t2).unwrap() + 1e-10);
        }
    }
}
