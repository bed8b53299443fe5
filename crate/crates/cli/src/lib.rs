//! Command-line front end for `qc-core`.

pub mod app;
pub mod complex;
pub mod grid;
pub mod output;

pub use app::run;
