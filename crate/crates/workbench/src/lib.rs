//! File formats, example fixtures, verification suites and the command-line
//! front end for `tropgrass-core`.

pub mod cli;
pub mod fixtures;
pub mod format;
pub mod suite;
