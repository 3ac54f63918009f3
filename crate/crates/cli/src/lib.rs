//! Document formats and report formatting for the quadlie command-line tool.

pub mod doc;
pub mod report;
