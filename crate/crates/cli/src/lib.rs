//! Text formats, example corpus and randomized oracle harness behind the
//! `actpres` command.

pub mod format;
pub mod commands;
pub mod corpus;
pub mod fuzz;
