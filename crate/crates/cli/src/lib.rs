//! Experiment suite and report types backing the `ripcert` binary.

pub mod experiments;
pub mod report;
