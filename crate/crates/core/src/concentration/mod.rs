//! Monte Carlo tail estimates, exponential-rate fits and the semicircle
//! distance, plus the experiment drivers built on them.

pub mod experiments;
mod fit;
mod semicircle;
mod tail;

pub use experiments::{
    deviation_samples, estimate_tail, estimate_tails, m1_variance_slope, moment_experiment,
    mprime_experiment, replicate_map, subexp_mean_experiment, EnsembleCell, MPrimeReport,
    MomentCell, SubexpReport,
};
pub use fit::{fit_rate, log_log_slope, RateFit, MIN_USABLE_COUNT};
pub use semicircle::{semicircle_cdf, semicircle_distance};
pub use tail::{clopper_pearson, TailEstimate};
