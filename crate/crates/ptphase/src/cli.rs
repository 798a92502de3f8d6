//! Command-line driver. Exit codes: 0 success, 1 usage or input error,
//! 2 failed scientific check.

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ptphase_core::pauli::operator_identities;
use ptphase_core::witness::{
    r0_threshold, witness_threshold, MATRIX_LIMIT, PPT_LIMIT, PPT_WARN_ABOVE,
};
use ptphase_core::{
    isotropic, pt_state, reflect_p1, run_pauli_demo, wigner_one, wigner_two, DensityMatrix,
    PauliReport, Shape, WignerGrid, WitnessSpec,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::format::{g12, reciprocal};
use crate::grid::RSpec;
use crate::io::{read_state, read_witness, write_json, LoadError, StateFile, WitnessFile};
use crate::scan::{self, ScanRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK: i32 = 2;

pub const TABLE1_DIMS: [usize; 7] = [2, 3, 4, 5, 9, 20, 50];

#[derive(Parser, Debug)]
#[command(
    name = "ptphase",
    version,
    about = "Partial transposition, discrete Wigner functions and PT entanglement witnesses"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// r0 threshold of the all-ones witness against 1/(N+1)
    Table1(Table1Args),
    /// Moments of the Heisenberg coupling in |Φ+> and its partial transpose (N = 2)
    Pauli(PauliArgs),
    /// Discrete Wigner function of a state on the N x N (or N²x N²) lattice
    Wigner(WignerArgs),
    /// Witness variances of the isotropic state over an r grid
    Scan(ScanArgs),
    /// Smallest eigenvalue of the partial transpose of a bipartite state
    Ppt(PptArgs),
    /// Write a seeded random state or witness table as JSON
    Sample(SampleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output format (default depends on the command)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Table1Args {
    /// Dimensions to tabulate, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = TABLE1_DIMS)]
    pub n: Vec<usize>,
    /// Allowed deviation from 1/(N+1)
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct PauliArgs {
    /// Allowed deviation from the exact values
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Perturb the computed report before checking it
    #[arg(long, hide = true)]
    pub inject_fault: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct StateSource {
    /// State JSON file; without it the isotropic state ρ_r is used
    #[arg(long, conflicts_with_all = ["n", "r"])]
    pub state: Option<PathBuf>,
    /// Local dimension of the isotropic state
    #[arg(long)]
    pub n: Option<usize>,
    /// Mixing parameter of the isotropic state
    #[arg(long)]
    pub r: Option<f64>,
}

impl StateSource {
    fn load(&self, default_n: usize, default_r: f64) -> Result<DensityMatrix, CliError> {
        match &self.state {
            Some(path) => Ok(read_state(path)?),
            None => {
                let n = self.n.unwrap_or(default_n);
                check_n(n)?;
                Ok(isotropic(n, self.r.unwrap_or(default_r))?)
            }
        }
    }
}

#[derive(Args, Debug)]
pub struct WignerArgs {
    #[command(flatten)]
    pub source: StateSource,
    /// Also check that the partial transpose reflects p1
    #[arg(long)]
    pub check_reflection: bool,
    /// Allowed deviation in the reflection check
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Local dimension (taken from the witness file when given)
    #[arg(long)]
    pub n: Option<usize>,
    /// Single value or start:end:step
    #[arg(long, default_value = "0:1:0.001")]
    pub r: RSpec,
    /// Witness coefficient JSON; all ones when omitted
    #[arg(long)]
    pub witness: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct PptArgs {
    #[command(flatten)]
    pub source: StateSource,
    /// Eigenvalues below -tol count as a violation
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SampleKind {
    State,
    Witness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    Single,
    Bipartite,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SampleKind::State)]
    pub kind: SampleKind,
    #[arg(long, value_enum, default_value_t = ShapeArg::Bipartite)]
    pub shape: ShapeArg,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Check(_) => EXIT_CHECK,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Check(msg) => write!(f, "check failed: {msg}"),
        }
    }
}

impl From<ptphase_core::Error> for CliError {
    fn from(e: ptphase_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn check_n(n: usize) -> CliResult {
    if n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {n}")));
    }
    Ok(())
}

fn format_of(output: &OutputArgs, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let f = output.format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(CliError::Usage(
            format!("format {f:?} is not available for this command").to_lowercase(),
        ));
    }
    Ok(f)
}

fn open_out(path: Option<&PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => {
            let file =
                File::create(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Parse `args` (program name first) and run. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn dispatch(command: Command) -> CliResult {
    match command {
        Command::Table1(a) => table1(&a),
        Command::Pauli(a) => pauli(&a),
        Command::Wigner(a) => wigner(&a),
        Command::Scan(a) => scan_cmd(&a),
        Command::Ppt(a) => ppt(&a),
        Command::Sample(a) => sample(&a),
    }
}

#[derive(Serialize)]
struct Table1Row {
    n_dim: usize,
    r0: Option<f64>,
    analytic: String,
    deviation: Option<f64>,
    pass: bool,
}

fn table1(a: &Table1Args) -> CliResult {
    let format = format_of(&a.output, Format::Text, &[Format::Text, Format::Json])?;
    for &n in &a.n {
        check_n(n)?;
    }
    let mut rows = Vec::with_capacity(a.n.len());
    let mut failures = Vec::new();
    for &n in &a.n {
        let expected = 1.0 / (n as f64 + 1.0);
        let row = match r0_threshold(n) {
            Ok(r0) => {
                let deviation = (r0 - expected).abs();
                let pass = deviation <= a.tol;
                if !pass {
                    failures.push(format!(
                        "N = {n}: r0 = {r0} deviates from 1/{} by {deviation:e}",
                        n + 1
                    ));
                }
                Table1Row {
                    n_dim: n,
                    r0: Some(r0),
                    analytic: reciprocal(n),
                    deviation: Some(deviation),
                    pass,
                }
            }
            Err(e) => {
                failures.push(format!("N = {n}: {e}"));
                Table1Row {
                    n_dim: n,
                    r0: None,
                    analytic: reciprocal(n),
                    deviation: None,
                    pass: false,
                }
            }
        };
        rows.push(row);
    }

    let mut out = open_out(a.output.out.as_ref())?;
    match format {
        Format::Json => write_json(&rows, &mut out)?,
        _ => {
            writeln!(out, "N, r0, analytic")?;
            for row in &rows {
                let r0 = row.r0.map_or_else(|| "-".to_owned(), g12);
                writeln!(out, "{}, {}, {}", row.n_dim, r0, row.analytic)?;
            }
            out.flush()?;
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(failures.join("; ")))
    }
}

const PAULI_LABELS: [&str; 7] = [
    "<A>",
    "<A^2>",
    "Var",
    "<A>_PT",
    "<A^2>_PT",
    "<(A^T1)^2>",
    "Var_PT",
];

#[derive(Serialize)]
struct PauliJson {
    values: PauliValues,
    expected: PauliValues,
    identities: IdentitiesJson,
    pass: bool,
}

#[derive(Serialize)]
struct PauliValues {
    mean_original: f64,
    second_original: f64,
    var_original: f64,
    mean_pt: f64,
    second_pt: f64,
    second_of_pt_op: f64,
    var_pt: f64,
}

impl From<&PauliReport> for PauliValues {
    fn from(r: &PauliReport) -> Self {
        PauliValues {
            mean_original: r.mean_original,
            second_original: r.second_original,
            var_original: r.var_original,
            mean_pt: r.mean_pt,
            second_pt: r.second_pt,
            second_of_pt_op: r.second_of_pt_op,
            var_pt: r.var_pt,
        }
    }
}

#[derive(Serialize)]
struct IdentitiesJson {
    square_residual: f64,
    square_pt_residual: f64,
    pt_square_residual: f64,
    order_gap: f64,
    hold: bool,
}

fn pauli(a: &PauliArgs) -> CliResult {
    let format = format_of(&a.output, Format::Text, &[Format::Text, Format::Json])?;
    let mut report = run_pauli_demo()?;
    if a.inject_fault {
        report.var_pt += 1e-3;
    }
    let ids = operator_identities()?;
    let ids_hold = ids.hold(a.tol);
    let expected = PauliReport::EXPECTED;
    let values_pass = report.max_deviation() <= a.tol;

    let mut out = open_out(a.output.out.as_ref())?;
    match format {
        Format::Json => write_json(
            &PauliJson {
                values: (&report).into(),
                expected: (&expected).into(),
                identities: IdentitiesJson {
                    square_residual: ids.square,
                    square_pt_residual: ids.square_pt,
                    pt_square_residual: ids.pt_square,
                    order_gap: ids.order_gap,
                    hold: ids_hold,
                },
                pass: values_pass && ids_hold,
            },
            &mut out,
        )?,
        _ => {
            let width = PAULI_LABELS.iter().map(|l| l.len()).max().unwrap_or(0);
            for ((label, (_, got)), (_, want)) in PAULI_LABELS
                .iter()
                .zip(report.entries())
                .zip(expected.entries())
            {
                let status = if (got - want).abs() <= a.tol {
                    "PASS"
                } else {
                    "FAIL"
                };
                writeln!(
                    out,
                    "{label:<width$} = {} (expected {}) {status}",
                    g12(got),
                    g12(want)
                )?;
            }
            let status = |ok: bool| if ok { "PASS" } else { "FAIL" };
            writeln!(out)?;
            writeln!(
                out,
                "A^2 = 3 - 2A              residual {} {}",
                g12(ids.square),
                status(ids.square <= a.tol)
            )?;
            writeln!(
                out,
                "(A^2)^T1 = 3 - 2A^T1      residual {} {}",
                g12(ids.square_pt),
                status(ids.square_pt <= a.tol)
            )?;
            writeln!(
                out,
                "(A^T1)^2 = 3 + 2A^T1      residual {} {}",
                g12(ids.pt_square),
                status(ids.pt_square <= a.tol)
            )?;
            writeln!(
                out,
                "(A^2)^T1 != (A^T1)^2      max gap {} {}",
                g12(ids.order_gap),
                status(ids.order_gap > 0.5)
            )?;
            out.flush()?;
        }
    }
    if !values_pass {
        return Err(CliError::Check(format!(
            "report deviates from (1, 1, 0, 3, -3, 9, -12) by {:e}",
            report.max_deviation()
        )));
    }
    if !ids_hold {
        return Err(CliError::Check(
            "operator identities do not hold".to_owned(),
        ));
    }
    Ok(())
}

fn wigner_of(rho: &DensityMatrix) -> Result<WignerGrid, CliError> {
    Ok(match rho.shape() {
        Shape::Single(_) => wigner_one(rho)?,
        Shape::Bipartite(_) => wigner_two(rho)?,
    })
}

fn wigner(a: &WignerArgs) -> CliResult {
    let format = format_of(&a.output, Format::Csv, &[Format::Csv, Format::Json])?;
    let rho = a.source.load(3, 1.0)?;
    let grid = wigner_of(&rho)?;

    let mut out = open_out(a.output.out.as_ref())?;
    match format {
        Format::Json => write_json(&crate::wigner::GridJson::new(&grid), &mut out)?,
        _ => crate::wigner::write_csv(&grid, &mut out)?,
    }
    drop(out);

    if a.check_reflection {
        let flipped = match rho.shape() {
            Shape::Single(_) => rho.transpose(),
            Shape::Bipartite(_) => pt_state(&rho)?.as_state()?,
        };
        let deviation = wigner_of(&flipped)?.max_abs_diff(&reflect_p1(&grid))?;
        if deviation < a.tol {
            eprintln!(
                "reflection check: max deviation < {:e}, PASS ({})",
                a.tol,
                g12(deviation)
            );
        } else {
            eprintln!(
                "reflection check: max deviation {deviation:e} >= {:e}, FAIL",
                a.tol
            );
            return Err(CliError::Check(format!(
                "reflection identity off by {deviation:e}"
            )));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ScanJson<'a> {
    n_dim: usize,
    r0: Option<f64>,
    rows: &'a [ScanRow],
}

fn scan_cmd(a: &ScanArgs) -> CliResult {
    let format = format_of(&a.output, Format::Csv, &[Format::Csv, Format::Json])?;
    let spec = match &a.witness {
        Some(path) => {
            let spec = read_witness(path)?;
            if let Some(n) = a.n.filter(|&n| n != spec.n_dim()) {
                return Err(CliError::Usage(format!(
                    "--n {n} disagrees with the witness file (N = {})",
                    spec.n_dim()
                )));
            }
            spec
        }
        None => {
            let n = a.n.unwrap_or(3);
            check_n(n)?;
            WitnessSpec::all_ones(n)?
        }
    };
    let n = spec.n_dim();
    let rows = scan::run_scan(&spec, &a.r.values())?;

    let threshold = if a.witness.is_some() {
        witness_threshold(&spec)
    } else {
        r0_threshold(n)
    };
    let r0 = match threshold {
        Ok(r0) => Some(r0),
        Err(ptphase_core::Error::NoSignChange) => None,
        Err(e) => return Err(CliError::Check(e.to_string())),
    };

    let mut out = open_out(a.output.out.as_ref())?;
    match format {
        Format::Json => write_json(
            &ScanJson {
                n_dim: n,
                r0,
                rows: &rows,
            },
            &mut out,
        )?,
        _ => scan::write_csv(&rows, &mut out)?,
    }
    drop(out);

    if n > MATRIX_LIMIT {
        eprintln!("note: ppt_min_eig omitted for N > {MATRIX_LIMIT}");
    }
    match r0 {
        Some(r0) if a.witness.is_none() => {
            eprintln!(
                "r0 = {} (1/(N+1) = {})",
                g12(r0),
                g12(1.0 / (n as f64 + 1.0))
            )
        }
        Some(r0) => eprintln!("r0 = {}", g12(r0)),
        None => eprintln!("r0: Var_PT does not change sign on [0, 1]"),
    }
    Ok(())
}

#[derive(Serialize)]
struct PptJson {
    n_dim: usize,
    min_eigenvalue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    analytic: Option<f64>,
    violates_ppt: bool,
}

fn ppt(a: &PptArgs) -> CliResult {
    let format = format_of(&a.output, Format::Text, &[Format::Text, Format::Json])?;
    let rho = a.source.load(2, 1.0)?;
    let n = rho.n_dim();
    if !rho.shape().is_bipartite() {
        return Err(CliError::Usage("ppt needs a bipartite state".to_owned()));
    }
    if n > PPT_LIMIT {
        return Err(CliError::Usage(format!(
            "N = {n} exceeds the PPT limit {PPT_LIMIT}"
        )));
    }
    if n > PPT_WARN_ABOVE {
        eprintln!(
            "warning: N = {n}; dense eigensolve of a {0} x {0} matrix may be slow",
            n * n
        );
    }
    let mut pt = pt_state(&rho)?;
    let min = pt.compute_min_eigenvalue()?;
    let violates = pt.violates_ppt(a.tol)?;
    // isotropic input has the closed form -r/N + (1-r)/N²
    let analytic = a.source.state.is_none().then(|| {
        let r = a.source.r.unwrap_or(1.0);
        let nf = n as f64;
        -r / nf + (1.0 - r) / (nf * nf)
    });

    let mut out = open_out(a.output.out.as_ref())?;
    match format {
        Format::Json => write_json(
            &PptJson {
                n_dim: n,
                min_eigenvalue: min,
                analytic,
                violates_ppt: violates,
            },
            &mut out,
        )?,
        _ => {
            writeln!(out, "min eigenvalue of rho^T1 = {}", g12(min))?;
            if let Some(v) = analytic {
                writeln!(out, "analytic -r/N + (1-r)/N^2 = {}", g12(v))?;
            }
            if violates {
                writeln!(out, "PPT violated: entangled")?;
            } else {
                writeln!(out, "PPT satisfied")?;
            }
            out.flush()?;
        }
    }
    if let Some(v) = analytic {
        if (min - v).abs() > a.tol {
            return Err(CliError::Check(format!(
                "eigensolve {min} disagrees with analytic {v}"
            )));
        }
    }
    Ok(())
}

fn sample(a: &SampleArgs) -> CliResult {
    check_n(a.n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut out = open_out(a.out.as_ref())?;
    match a.kind {
        SampleKind::State => {
            let shape = match a.shape {
                ShapeArg::Single => Shape::Single(a.n),
                ShapeArg::Bipartite => Shape::Bipartite(a.n),
            };
            let rho = ptphase_core::sample::random_density(shape, &mut rng)?;
            write_json(&StateFile::from_state(&rho), &mut out)?;
        }
        SampleKind::Witness => {
            let spec = ptphase_core::sample::random_witness(a.n, &mut rng)?;
            write_json(&WitnessFile::from_spec(&spec), &mut out)?;
        }
    }
    Ok(())
}
