//! Library surface of the experiment runner: configuration, orchestration,
//! table presets and report serialization. The `fracl1` binary is a thin
//! command-line layer over these modules.

pub mod config;
pub mod emit;
pub mod experiment;
pub mod tables;
