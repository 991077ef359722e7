//! Additive codes over `F_{q^2}` and a decision procedure for equivalence
//! to `F_{q^2}`-linear codes.

pub mod addcode;
pub mod catalog;
pub mod equiv;
pub mod error;
pub mod field;
pub mod linalg;
pub mod qc;
pub mod random;

pub use addcode::{AdditiveCode, BlockColumn, LinearCodeExt, DEFAULT_DISTANCE_BUDGET};
pub use equiv::{
    run_pipeline, test_linearity, LinearityVerdict, PipelineRun, PipelineTrace, SMatrix,
    SearchOptions, StrictReason, UndecidedReason, Witness, DEFAULT_SEARCH_BUDGET,
};
pub use error::{Error, Result};
pub use field::{BaseField, ExtElem, FieldSpec, Fq};
pub use linalg::GfMatrix;
pub use qc::{PolyModXn, QcSpec};
