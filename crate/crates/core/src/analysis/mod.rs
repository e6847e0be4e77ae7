//! Ratio measurement, the brute-force extremal search, exponent fitting and
//! the inequality checkers.

mod checks;
mod fit;
mod ratio;
mod search;
mod suites;

pub use checks::{
    key_inequality_check, key_inequality_rhs, nikolskii_calibration, remez_check, remez_threshold,
    KeyInequalityReport, RemezReport,
};
pub use fit::{fit, sweep_and_fit, Correction, Family, FitResult, Sweep};
pub use ratio::{ratio, RatioSample};
pub use search::{brute_force_sup, SearchResult};
pub use suites::{
    key_inequality_suite, oracle_suite, qseries_suite, remez_suite, Check, SuiteReport,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent random stream for task `index` of a run seeded with `seed`.
pub(crate) fn task_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
