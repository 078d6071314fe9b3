//! Special functions backing the reference solutions and kernel diagnostics:
//! Gamma, Mittag-Leffler, polylogarithm. All evaluators are pure functions
//! of value inputs and safe to call concurrently.

mod gamma;
mod mittag_leffler;
mod polylog;

pub use gamma::{gamma, recip_gamma, sin_pi};
pub use mittag_leffler::{mittag_leffler, MlParams};
pub use polylog::polylog;

pub(crate) use mittag_leffler::ml_neg_upper_bound;
pub(crate) use polylog::{expm1_complex, polylog_continued};
