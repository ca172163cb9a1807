//! Command-line front end: parse surface/divisor/plan documents, run the
//! validators and bound checkers, and emit text or machine reports.

pub mod commands;
pub mod input;
pub mod report;

pub use commands::{cmd_check, cmd_fuzz, cmd_river, cmd_validate};
pub use input::{parse_document, serialize_document, InputDocument, ParseError};
pub use report::{parse_machine_report, Record, Report};
