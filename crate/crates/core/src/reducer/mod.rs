//! Removes the scheduled colors one at a time from a nontrivially
//! 17-colored diagram.

pub mod finger;
pub mod formulas;
pub mod macros;
pub mod occurrence;
mod reduce;
pub mod schedule;
pub mod search;
pub mod tables;
pub mod word;

pub use formulas::{
    alt_exclusion_pairs, case2_colors, case3_alt_colors, case3_diff_colors, case3_equal_colors, exclusions_for_a,
    exclusions_for_b,
};
pub use occurrence::{classify_occurrences, measure, Occurrence, OccurrenceKind};
pub use reduce::{
    eliminate_color, reduce_colored, reduce_to_six, ReduceConfig, ReduceError, Reduction, ReductionReport,
    ReductionState, StepReport, DEFAULT_STEP_BUDGET,
};
pub use schedule::{EliminationSchedule, P, SCHEDULE, TARGET};
pub use search::{local_search, SearchError, SearchLimits, SearchStats};
pub use tables::{special_case_tables, SpecialTable};
