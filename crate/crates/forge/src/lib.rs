//! Text grammar, file formats, JSON reports and the command-line driver for
//! `lpi-core`.

pub mod algfile;
pub mod cli;
pub mod codec;
pub mod dsl;
pub mod report;
