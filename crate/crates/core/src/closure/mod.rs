//! Structure-constant tables and exact verification of generator sets
//! against them.

mod table;
mod tables;
mod verify;

pub use table::{combo_add, combo_scale, BracketTable, Combo, JacobiFailure, JacobiReport, Kind};
pub use tables::{eps2, eps3, table_d21, table_osp22, table_osp2n2};
pub use verify::{
    bracket_of, residual_of, verify_closure, verify_grading, ClosureReport, EntryResult, GradeEntry, GradingReport,
    SlotImage,
};
