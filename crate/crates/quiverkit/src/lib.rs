//! File formats, JSON export, fixtures and the command line for
//! [`quiverkit_core`].

pub mod cli;
pub mod corpus;
pub mod fixtures;
pub mod format;
pub mod json;
pub mod modspec;

pub use format::{parse_presentation, to_text, ParseError};
