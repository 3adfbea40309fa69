//! Spec files, commands and property suites on top of `dglg-core`.

pub mod commands;
pub mod corpus;
pub mod spec_file;
pub mod suites;
