//! Graded premetric groups over a sylleptic context and their twisted Witt
//! classes.

mod graded;
mod isometry;
mod order;
pub mod presets;
mod reduction;
mod structure;
mod symplectic;
mod triviality;

pub use graded::{GradedPremetricGroup, SyllepticContext};
pub use isometry::graded_isometry;
pub use order::{
    classes_equal, classes_equal_mod_witt, order_mod_witt, order_raw, OrderReport, PowerRecord,
};
pub use reduction::{
    condense, is_trivial_mod_witt, reduce_mod_witt, reduce_raw, replay, split_metric,
    split_then_lagrangian, Decision, ReductionStep, ReductionTrace,
};
pub use structure::{group_structure, CayleyTable, Fingerprint, GroupStructure};
pub use symplectic::{
    exact_sequence_report, preserves, symplectic_automorphisms, ExactSequenceReport,
};
pub use triviality::{
    find_lagrangian, is_a_trivial, is_s_invertible, s_invertibility, TrivialityCertificate,
};

#[cfg(test)]
mod tests;
