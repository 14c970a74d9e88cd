//! Command-line front end for `forelli-core`: JSON formats, reports, atomic
//! file output and the acceptance battery.

pub mod cli;
pub mod format;
pub mod io;
pub mod report;
pub mod suite;
