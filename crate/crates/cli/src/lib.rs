//! Command-line front end: file handling, command dispatch, the worked
//! example verifier and the seeded property suite.

pub mod app;
pub mod example;
pub mod suite;

pub use app::{execute, main_with, Cli, Output};
pub use suite::{run_suite, SuiteConfig, SuiteReport};
