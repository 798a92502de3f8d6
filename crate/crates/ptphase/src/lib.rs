//! JSON and CSV formats plus the `ptphase` command-line driver on top of
//! `ptphase-core`.

pub mod cli;
pub mod format;
pub mod grid;
pub mod io;
pub mod scan;
pub mod wigner;
