//! JSON state and witness files.
//!
//! States: `{"n_dim": N, "shape": "single"|"bipartite", "entries": [[re, im], ...]}`
//! with entries row-major over the full `N` or `N²` dimension.
//!
//! Witnesses: `{"n_dim": N, "coeffs": [[[re, im], ...], ...]}`, row `m`, column `l`.

use std::fmt;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use ptphase_core::{Complex, ComplexMatrix, DensityMatrix, Shape, WitnessSpec};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub enum LoadError {
    Io {
        path: PathBuf,
        source: io::Error,
    },
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    Format(String),
    Core(ptphase_core::Error),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            LoadError::Json { path, source } => write!(f, "{}: {source}", path.display()),
            LoadError::Format(msg) => f.write_str(msg),
            LoadError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LoadError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            LoadError::Io { source, .. } => Some(source),
            LoadError::Json { source, .. } => Some(source),
            LoadError::Format(_) => None,
            LoadError::Core(e) => Some(e),
        }
    }
}

impl From<ptphase_core::Error> for LoadError {
    fn from(e: ptphase_core::Error) -> Self {
        LoadError::Core(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeTag {
    Single,
    Bipartite,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n_dim: usize,
    pub shape: ShapeTag,
    pub entries: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub n_dim: usize,
    pub coeffs: Vec<Vec<[f64; 2]>>,
}

fn pair(z: &Complex) -> [f64; 2] {
    [z.re, z.im]
}

fn complex([re, im]: [f64; 2]) -> Complex {
    Complex::new(re, im)
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let shape = match rho.shape() {
            Shape::Single(_) => ShapeTag::Single,
            Shape::Bipartite(_) => ShapeTag::Bipartite,
        };
        StateFile {
            n_dim: rho.n_dim(),
            shape,
            entries: rho.matrix().entries().iter().map(pair).collect(),
        }
    }

    pub fn shape(&self) -> Shape {
        match self.shape {
            ShapeTag::Single => Shape::Single(self.n_dim),
            ShapeTag::Bipartite => Shape::Bipartite(self.n_dim),
        }
    }

    /// Validated density matrix: Hermitian, unit trace, positive semidefinite.
    pub fn into_state(self) -> Result<DensityMatrix, LoadError> {
        if self.n_dim < 2 {
            return Err(LoadError::Format(format!(
                "n_dim must be at least 2, got {}",
                self.n_dim
            )));
        }
        let shape = self.shape();
        let dim = shape.total_dim();
        if self.entries.len() != dim * dim {
            return Err(LoadError::Format(format!(
                "{shape} state needs {} entries, found {}",
                dim * dim,
                self.entries.len()
            )));
        }
        let matrix =
            ComplexMatrix::from_row_major(dim, self.entries.into_iter().map(complex).collect())?;
        Ok(DensityMatrix::new(matrix, shape)?)
    }
}

impl WitnessFile {
    pub fn from_spec(spec: &WitnessSpec) -> Self {
        let n = spec.n_dim();
        WitnessFile {
            n_dim: n,
            coeffs: (0..n)
                .map(|m| (0..n).map(|l| pair(&spec.x(m, l))).collect())
                .collect(),
        }
    }

    pub fn into_spec(self) -> Result<WitnessSpec, LoadError> {
        let n = self.n_dim;
        if self.coeffs.len() != n || self.coeffs.iter().any(|row| row.len() != n) {
            return Err(LoadError::Format(format!(
                "witness coefficients must form a {n} x {n} table"
            )));
        }
        let flat = self.coeffs.into_iter().flatten().map(complex).collect();
        Ok(WitnessSpec::new(n, flat)?)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, LoadError> {
    let file = File::open(path).map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_reader(BufReader::new(file)).map_err(|source| LoadError::Json {
        path: path.to_owned(),
        source,
    })
}

pub fn read_state(path: &Path) -> Result<DensityMatrix, LoadError> {
    read_json::<StateFile>(path)?.into_state()
}

pub fn read_witness(path: &Path) -> Result<WitnessSpec, LoadError> {
    read_json::<WitnessFile>(path)?.into_spec()
}

/// Pretty JSON followed by a newline.
pub fn write_json<T: Serialize, W: Write>(value: &T, out: W) -> io::Result<()> {
    let mut out = BufWriter::new(out);
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()
}
