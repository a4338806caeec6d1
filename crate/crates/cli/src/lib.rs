//! Configuration and the acceptance suite behind the `qgarnier` binary.

pub mod config;
pub mod suite;
