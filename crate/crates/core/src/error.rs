use core::fmt;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch {
        left: usize,
        right: usize,
    },
    /// A matrix whose size is not `n_dim²` was handed to a bipartite operation.
    NotBipartite {
        dim: usize,
        n_dim: usize,
    },
    InvalidDimension(usize),
    NotHermitian {
        deviation: f64,
    },
    NotNormalized {
        trace: f64,
    },
    NotPositive {
        min_eigenvalue: f64,
    },
    NonFinite,
    NotConverged {
        sweeps: usize,
        off_norm: f64,
    },
    /// Wigner functions need an odd prime dimension.
    NotOddPrime(usize),
    WrongShape {
        expected: &'static str,
    },
    NotValidated,
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
    },
    ImaginaryResidue {
        max_imag: f64,
    },
    TooLarge {
        n_dim: usize,
        limit: usize,
    },
    NoSignChange,
    RootMismatch {
        analytic: f64,
        bisection: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::NotBipartite { dim, n_dim } => {
                write!(f, "matrix of dimension {dim} is not bipartite over N = {n_dim}")
            }
            Error::InvalidDimension(n) => write!(f, "invalid dimension N = {n} (need N >= 2)"),
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (max |A - A^dagger| = {deviation:e})")
            }
            Error::NotNormalized { trace } => write!(f, "trace is {trace}, expected 1"),
            Error::NotPositive { min_eigenvalue } => {
                write!(f, "matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")
            }
            Error::NonFinite => write!(f, "matrix contains NaN or infinite entries"),
            Error::NotConverged { sweeps, off_norm } => write!(
                f,
                "Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
            ),
            Error::NotOddPrime(n) => write!(
                f,
                "N must be an odd prime (got {n}); the discrete Wigner function requires N to be a prime number larger than 2"
            ),
            Error::WrongShape { expected } => write!(f, "expected a {expected} state"),
            Error::NotValidated => write!(f, "state has not been validated as positive semidefinite"),
            Error::ParameterOutOfRange { name, value } => {
                write!(f, "parameter {name} = {value} is out of range")
            }
            Error::ImaginaryResidue { max_imag } => {
                write!(f, "result has imaginary part {max_imag:e}; input is not Hermitian")
            }
            Error::TooLarge { n_dim, limit } => {
                write!(f, "N = {n_dim} exceeds the limit {limit} for dense evaluation")
            }
            Error::NoSignChange => write!(f, "no sign change found in (0, 1]"),
            Error::RootMismatch { analytic, bisection } => write!(
                f,
                "analytic root {analytic} and bisection root {bisection} disagree"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
