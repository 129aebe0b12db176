//! File formats: Matrix Market input/output and the JSON run report.

pub mod matrix_market;
pub mod report;
