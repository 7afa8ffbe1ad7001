//! Library half of the `lindir` command line front end.
//!
//! [`config`] defines the JSON run configuration (schema, compact value
//! parsers, validation), [`run`] executes a validated configuration and
//! renders the report payload plus optional CSV tables. The binary in
//! `main.rs` is a thin clap layer over these two modules so that every code
//! path is exercisable from tests without spawning processes.

pub mod config;
pub mod run;
