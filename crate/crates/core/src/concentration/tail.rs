use serde::{Deserialize, Serialize};
use statrs::function::beta::beta_reg;

/// Monte Carlo exceedance frequency with its exact 95% binomial interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailEstimate {
    pub exceed_count: u64,
    pub replicates: u64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

impl TailEstimate {
    /// Panics if `replicates == 0` or `exceed_count > replicates`.
    pub fn from_counts(exceed_count: u64, replicates: u64) -> Self {
        assert!(replicates > 0, "tail estimate needs at least one replicate");
        assert!(
            exceed_count <= replicates,
            "more exceedances than replicates"
        );
        let (ci_lo, ci_hi) = clopper_pearson(exceed_count, replicates, 0.05);
        let p_hat = exceed_count as f64 / replicates as f64;
        Self {
            exceed_count,
            replicates,
            p_hat,
            ci_lo: ci_lo.min(p_hat),
            ci_hi: ci_hi.max(p_hat),
        }
    }

    /// Binomial standard error of `p_hat`.
    pub fn standard_error(&self) -> f64 {
        (self.p_hat * (1.0 - self.p_hat) / self.replicates as f64).sqrt()
    }
}

/// `x` with `I_x(a, b) = target`, by bisection.
fn beta_quantile(a: f64, b: f64, target: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if beta_reg(a, b, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Exact two-sided `1 - alpha` Clopper–Pearson interval for `x` successes in
/// `n` trials.
pub fn clopper_pearson(x: u64, n: u64, alpha: f64) -> (f64, f64) {
    assert!(n > 0 && x <= n);
    let (xf, nf) = (x as f64, n as f64);
    let lo = if x == 0 {
        0.0
    } else {
        beta_quantile(xf, nf - xf + 1.0, alpha / 2.0)
    };
    let hi = if x == n {
        1.0
    } else {
        beta_quantile(xf + 1.0, nf - xf, 1.0 - alpha / 2.0)
    };
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_exceed() {
        let t = TailEstimate::from_counts(10_000, 10_000);
        assert_eq!(t.p_hat, 1.0);
        assert_eq!(t.ci_hi, 1.0);
        assert!(t.ci_lo < 1.0 && t.ci_lo > 0.999);
    }

    #[test]
    fn none_exceed_rule_of_three() {
        let t = TailEstimate::from_counts(0, 1000);
        assert_eq!(t.ci_lo, 0.0);
        // exact upper limit is 1 - 0.025^(1/n)
        let want = 1.0 - 0.025f64.powf(1.0 / 1000.0);
        assert!((t.ci_hi - want).abs() < 1e-9);
    }

    #[test]
    fn interval_brackets_estimate() {
        for &(x, n) in &[(1, 10), (5, 100), (500, 1000), (99, 100)] {
            let t = TailEstimate::from_counts(x, n);
            assert!(t.ci_lo <= t.p_hat && t.p_hat <= t.ci_hi);
        }
        // known value: x = 5, n = 10 -> (0.187086, 0.812914)
        let (lo, hi) = clopper_pearson(5, 10, 0.05);
        assert!((lo - 0.187_086_2).abs() < 1e-6 && (hi - 0.812_913_8).abs() < 1e-6);
    }
}
