//! Brute-force stack volumes of semistable twisted Higgs bundles on the
//! projective line over small finite fields.

mod field;
mod p1;

pub use field::FiniteField;
pub use p1::{
    aut_count, compare_with_formula, semistable_count, stack_volume_p1, Comparison, OracleOptions, SplittingType,
    VolumeReport, DEFAULT_CAP,
};
