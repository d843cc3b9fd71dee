use super::calibration;
use crate::error::{domain, ensure_positive, Error, Result};

/// Laurent–Massart upper tail for `chi^2_k`:
/// `P(X > k + 2 sqrt(k x) + 2x) <= exp(-x)`.
///
/// Returns `(threshold, bound)`.
pub fn chi_tail_bound(k: f64, x: f64) -> Result<(f64, f64)> {
    ensure_positive("chi degrees of freedom", k)?;
    if !(x >= 0.0 && x.is_finite()) {
        return Err(domain(format!(
            "tail parameter x must be non-negative, got {x}"
        )));
    }
    Ok((k + 2.0 * (k * x).sqrt() + 2.0 * x, (-x).exp()))
}

fn check_ordered_shapes(k: f64, l: f64, delta: f64) -> Result<()> {
    ensure_positive("beta shape k", k)?;
    ensure_positive("beta shape l", l)?;
    ensure_positive("deviation delta", delta)?;
    if k < l {
        return Err(domain(format!(
            "tail bound expects k >= l (reflect z -> -z otherwise), got k={k}, l={l}"
        )));
    }
    Ok(())
}

/// Two-sided bound `P(|Z - E Z| > delta) <= 4 exp(-C k delta^2)` for
/// `Z ~ B(k, l)` with `k >= l`, using the calibrated constant `C`.
///
/// The value is not clamped to 1.
pub fn sym_beta_tail_bound(k: f64, l: f64, delta: f64) -> Result<f64> {
    check_ordered_shapes(k, l, delta)?;
    let c = calibration::constants().sym_beta;
    Ok(4.0 * (-c * k * delta * delta).exp())
}

/// Bound on `P(|sqrt(1 + s Z) - sqrt(1 + s E Z)| > delta)` for either sign
/// `s`, same form and requirements as [`sym_beta_tail_bound`].
pub fn sym_beta_sqrt_shift_bound(k: f64, l: f64, delta: f64) -> Result<f64> {
    check_ordered_shapes(k, l, delta)?;
    let c = calibration::constants().sym_beta_sqrt_shift;
    Ok(4.0 * (-c * k * delta * delta).exp())
}

/// Telescoping bound on `|prod p - prod q|` given `max |p_i - q_i| <= delta`:
///
/// `delta * sum_{k=0}^{m-1} prod_{i<m-k} |p_i| * prod_{j>m-k} |q_j|`
/// (1-based indices).
pub fn product_difference_bound(p: &[f64], q: &[f64], delta: f64) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    if p.is_empty() {
        return Err(domain("product bound needs at least one factor"));
    }
    if !(delta >= 0.0) {
        return Err(domain(format!("delta must be non-negative, got {delta}")));
    }
    for (i, (&pi, &qi)) in p.iter().zip(q).enumerate() {
        let slack = 4.0 * f64::EPSILON * pi.abs().max(qi.abs());
        if (pi - qi).abs() > delta + slack {
            return Err(Error::Precondition(format!(
                "|p[{i}] - q[{i}]| = {} exceeds delta = {delta}",
                (pi - qi).abs()
            )));
        }
    }

    let m = p.len();
    // prefix[t] = prod_{i<t} |p_i|, suffix[t] = prod_{j>=t} |q_j| (0-based)
    let mut prefix = vec![1.0; m + 1];
    for t in 0..m {
        prefix[t + 1] = prefix[t] * p[t].abs();
    }
    let mut suffix = vec![1.0; m + 1];
    for t in (0..m).rev() {
        suffix[t] = suffix[t + 1] * q[t].abs();
    }
    // term k pairs the first m-k-1 entries of p with the last k entries of q
    let sum: f64 = (0..m).map(|k| prefix[m - k - 1] * suffix[m - k]).sum();
    Ok(delta * sum)
}
