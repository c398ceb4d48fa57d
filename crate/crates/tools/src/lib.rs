//! Companion toolkit for the exact asymmetric-distance core: an input file
//! grammar with strict validation, deterministic report rendering (aligned
//! text and JSON from the same values), seeded property suites with
//! counterexample shrinking, a corpus of worked instances, and the `qpmet`
//! command-line binary built on top.

pub mod cli;
pub mod format;
pub mod lab;
pub mod report;
