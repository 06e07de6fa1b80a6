//! Harness library behind the `charfield` binary: corpus management, suite
//! configuration, and suite orchestration with machine-readable reports.

pub mod config;
pub mod corpus;
pub mod suites;
