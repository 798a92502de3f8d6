//! Witness variances of the isotropic state over an r grid.

use std::io::{self, Write};

use ptphase_core::witness::{ppt_min_eigenvalue, MATRIX_LIMIT};
use ptphase_core::{moments_original_closed, moments_pt_closed, MomentReport, Result, WitnessSpec};
use rayon::prelude::*;
use serde::Serialize;

use crate::format::g12;

/// `Var(Ω)_{ρ_r^{T1}}` must fall below `-ENTANGLED_TOL` to flag a row.
pub const ENTANGLED_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub r: f64,
    pub var_original: f64,
    pub var_pt: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ppt_min_eig: Option<f64>,
    pub entangled_flag: bool,
}

/// Both moments are affine in r, so the closed forms are evaluated at the two
/// ends once and interpolated.
#[derive(Clone, Copy, Debug)]
struct Moments {
    at0: MomentReport,
    at1: MomentReport,
}

impl Moments {
    fn variance(&self, r: f64) -> f64 {
        let mean = self.at0.mean * (1.0 - r) + self.at1.mean * r;
        let second = self.at0.second * (1.0 - r) + self.at1.second * r;
        second - mean.norm_sqr()
    }
}

fn moments(
    spec: &WitnessSpec,
    f: fn(&WitnessSpec, f64) -> Result<MomentReport>,
) -> Result<Moments> {
    Ok(Moments {
        at0: f(spec, 0.0)?,
        at1: f(spec, 1.0)?,
    })
}

/// One row per grid point, in grid order. The PPT column is filled when
/// `N ≤ 12`.
pub fn run_scan(spec: &WitnessSpec, rs: &[f64]) -> Result<Vec<ScanRow>> {
    let n = spec.n_dim();
    let original = moments(spec, moments_original_closed)?;
    let pt = moments(spec, moments_pt_closed)?;
    let with_ppt = n <= MATRIX_LIMIT;
    rs.par_iter()
        .map(|&r| {
            if !(0.0..=1.0).contains(&r) {
                return Err(ptphase_core::Error::ParameterOutOfRange {
                    name: "r",
                    value: r,
                });
            }
            let var_pt = pt.variance(r);
            Ok(ScanRow {
                r,
                var_original: original.variance(r),
                var_pt,
                ppt_min_eig: if with_ppt {
                    Some(ppt_min_eigenvalue(n, r)?)
                } else {
                    None
                },
                entangled_flag: var_pt < -ENTANGLED_TOL,
            })
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[ScanRow], mut out: W) -> io::Result<()> {
    let with_ppt = rows.first().is_some_and(|row| row.ppt_min_eig.is_some());
    if with_ppt {
        writeln!(out, "r,var_original,var_pt,ppt_min_eig,entangled_flag")?;
    } else {
        writeln!(out, "r,var_original,var_pt,entangled_flag")?;
    }
    for row in rows {
        write!(
            out,
            "{},{},{}",
            g12(row.r),
            g12(row.var_original),
            g12(row.var_pt)
        )?;
        if let Some(e) = row.ppt_min_eig {
            write!(out, ",{}", g12(e))?;
        }
        writeln!(out, ",{}", row.entangled_flag)?;
    }
    out.flush()
}
