//! Cross-validated comparison of selectors and classifiers.

mod cv;
mod grid;
mod report;

pub use cv::{
    compact_categories, cross_validate, prepare_fold, run_cv, CvOptions, CvPredictions, EvalCell,
};
pub use grid::{run_grid, CellOutcome, DatasetFingerprint, EvalReport, GridConfig, Runtime};
pub use report::{category_label, emit_report, ReportFormat};
