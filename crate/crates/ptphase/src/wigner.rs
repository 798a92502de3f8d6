//! Wigner grid export.

use std::io::{self, Write};

use ptphase_core::{Arity, WignerGrid};
use serde::Serialize;

use crate::format::g12;

/// Header `q,p,w` or `q1,q2,p1,p2,w`, one row per phase-space point in
/// storage order.
pub fn write_csv<W: Write>(grid: &WignerGrid, mut out: W) -> io::Result<()> {
    match grid.arity() {
        Arity::One => {
            writeln!(out, "q,p,w")?;
            for ([q, p, ..], w) in grid.labels() {
                writeln!(out, "{q},{p},{}", g12(w))?;
            }
        }
        Arity::Two => {
            writeln!(out, "q1,q2,p1,p2,w")?;
            for ([q1, q2, p1, p2], w) in grid.labels() {
                writeln!(out, "{q1},{q2},{p1},{p2},{}", g12(w))?;
            }
        }
    }
    out.flush()
}

#[derive(Serialize)]
pub struct GridJson<'a> {
    pub n_dim: usize,
    pub arity: u8,
    pub values: &'a [f64],
}

impl<'a> GridJson<'a> {
    pub fn new(grid: &'a WignerGrid) -> Self {
        GridJson {
            n_dim: grid.n_dim(),
            arity: match grid.arity() {
                Arity::One => 1,
                Arity::Two => 2,
            },
            values: grid.values(),
        }
    }
}
