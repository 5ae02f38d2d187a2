//! Command-line front end and file formats for `blowzeta-core`.

pub mod catalog;
pub mod commands;
pub mod expr;
pub mod json;
