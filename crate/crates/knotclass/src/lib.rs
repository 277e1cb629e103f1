//! File formats, the command line and parallel drivers over `knotclass-core`.

pub mod cli;
pub mod parallel;
pub mod table;

pub use knotclass_core as core;
