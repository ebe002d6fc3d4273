//! Library side of the command-line front end: JSON schema, exporters, and
//! the check runners shared by the binary and its tests.

pub mod export;
pub mod run;
pub mod schema;
