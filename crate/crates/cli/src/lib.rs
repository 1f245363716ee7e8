//! Script language and command runner for the `gradalg` engine.

pub mod ast;
pub mod commands;
pub mod lexer;
pub mod parser;
pub mod report;
pub mod runner;
pub mod values;

pub use parser::{parse_script, ParseError};
pub use report::{Document, Report, Status};
pub use runner::{run, RunConfig};

/// Run a script and wrap the reports in a versioned document.
pub fn run_document(script: &ast::Script, cfg: &RunConfig) -> Document {
    Document { schema_version: report::SCHEMA_VERSION, engine: cfg.engine_info(), reports: run(script, cfg) }
}
