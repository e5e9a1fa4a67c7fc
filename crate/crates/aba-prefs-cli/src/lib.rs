//! Front-end pieces of the command-line tool: the textual framework format
//! and the text/JSON renderers. The binary in `main.rs` wires these to the
//! reasoning crate.

pub mod output;
pub mod parser;
