//! Annual time-series econometrics: gap interpolation, derived series,
//! reference distributions, OLS with residual diagnostics, unit-root
//! tests, Engle–Granger cointegration and CUSUM stability.

// `!(x > 0.0)` style tests are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coint;
pub mod critical;
pub mod cusum;
pub mod derived;
pub mod diagnostics;
pub mod dist;
pub mod error;
pub mod interpolate;
pub mod linreg;
pub mod result;
pub mod series;
pub mod simulate;
pub mod special;
pub mod table;
pub mod unitroot;

pub use error::{Error, ErrorClass, Result};

/// Library version recorded in replication manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
