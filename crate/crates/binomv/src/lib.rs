//! Command-line front end for `binomv-core`.
//!
//! - [`cli`]: argument parsing and the `verify`, `eval`, `sum` and `oeis-check` commands,
//! - [`report`]: text and JSON report formats,
//! - [`bfile`]: OEIS b-files and certified digit comparison,
//! - [`run`]: parallel verification with wall-clock timing.

pub mod bfile;
pub mod cli;
pub mod report;
pub mod run;
