//! Configuration, subcommands and output formats for the `zerorange` binary.

pub mod cli;
pub mod commands;
pub mod config;
pub mod output;
