//! Problem files, report rendering and the built-in regression suite behind
//! the `pglcent` binary.

mod problem;
mod report;
mod suite;

pub use problem::{parse_problem, ProblemBody, ProblemError, ProblemFile, SyntaxError};
pub use report::{
    emit_centralizer, emit_report, twist_set, CentralizerJson, Format, ReportJson, StratumJson,
};
pub use suite::{
    emit_suite, paper_cases, run_paper_suite, run_suite, PaperCase, SuiteJson, SuiteResult,
    SuiteRow, SuiteRowJson,
};

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
