//! File formats, JSON traces, brute-force oracles, the acceptance suite and
//! the command-line front end for `cantor-star-core`.

pub mod cli;
pub mod formats;
pub mod oracle;
pub mod suite;
pub mod trace;
