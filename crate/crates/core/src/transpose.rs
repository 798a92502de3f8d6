//! Partial transposition on the first particle and expectation values in
//! partially transposed states.
//!
//! `(A^{T1})[(n1, n2), (m1, m2)] = A[(m1, n2), (n1, m2)]`. For any state ρ
//! and observable A, `Tr(ρ^{T1} A) = Tr(ρ A^{T1})`, so the expectation in the
//! (possibly unphysical) transposed state is the expectation of the Hermitian
//! operator `A^{T1}` in the original one.

use crate::algebra::{Complex, ComplexMatrix, DEFAULT_TOL};
use crate::eigen::min_eigenvalue;
use crate::error::{Error, Result};
use crate::states::{DensityMatrix, Shape};

fn check_bipartite(a: &ComplexMatrix, n_dim: usize) -> Result<()> {
    if n_dim < 2 || a.dim() != n_dim * n_dim {
        return Err(Error::NotBipartite {
            dim: a.dim(),
            n_dim,
        });
    }
    Ok(())
}

/// Transpose of the first tensor factor.
pub fn partial_transpose_1(a: &ComplexMatrix, n_dim: usize) -> Result<ComplexMatrix> {
    check_bipartite(a, n_dim)?;
    let n = n_dim;
    Ok(ComplexMatrix::from_fn(n * n, |row, col| {
        let (n1, n2) = (row / n, row % n);
        let (m1, m2) = (col / n, col % n);
        a[(m1 * n + n2, n1 * n + m2)]
    }))
}

/// Transpose of the second tensor factor.
pub fn partial_transpose_2(a: &ComplexMatrix, n_dim: usize) -> Result<ComplexMatrix> {
    check_bipartite(a, n_dim)?;
    let n = n_dim;
    Ok(ComplexMatrix::from_fn(n * n, |row, col| {
        let (n1, n2) = (row / n, row % n);
        let (m1, m2) = (col / n, col % n);
        a[(n1 * n + m2, m1 * n + n2)]
    }))
}

/// `ρ^{T1}` together with its (optional, computed on request) smallest
/// eigenvalue.
#[derive(Clone, Debug)]
pub struct PartialTransposed {
    pub matrix: ComplexMatrix,
    pub n_dim: usize,
    pub hermitian: bool,
    pub min_eigenvalue: Option<f64>,
}

impl PartialTransposed {
    /// The cached smallest eigenvalue, or a fresh eigensolve.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        match self.min_eigenvalue {
            Some(v) => Ok(v),
            None => min_eigenvalue(&self.matrix),
        }
    }

    /// Solves for the smallest eigenvalue once and caches it.
    pub fn compute_min_eigenvalue(&mut self) -> Result<f64> {
        let v = self.min_eigenvalue()?;
        self.min_eigenvalue = Some(v);
        Ok(v)
    }

    /// Negative smallest eigenvalue beyond `tol` means the source state is
    /// entangled.
    pub fn violates_ppt(&self, tol: f64) -> Result<bool> {
        Ok(self.min_eigenvalue()? < -tol)
    }

    /// The transposed matrix as an unvalidated density matrix (Hermitian and
    /// unit trace, positivity not asserted).
    pub fn as_state(&self) -> Result<DensityMatrix> {
        DensityMatrix::new_unvalidated(self.matrix.clone(), Shape::Bipartite(self.n_dim))
    }
}

/// Partial transpose of a bipartite state. Trace and Hermiticity carry over;
/// positivity does not.
pub fn pt_state(rho: &DensityMatrix) -> Result<PartialTransposed> {
    let n_dim = match rho.shape() {
        Shape::Bipartite(n) => n,
        Shape::Single(_) => {
            return Err(Error::WrongShape {
                expected: "bipartite",
            })
        }
    };
    let matrix = partial_transpose_1(rho.matrix(), n_dim)?;
    let hermitian = matrix.is_hermitian(DEFAULT_TOL);
    Ok(PartialTransposed {
        matrix,
        n_dim,
        hermitian,
        min_eigenvalue: None,
    })
}

/// `Tr(ρ A)`.
pub fn expectation(rho: &ComplexMatrix, a: &ComplexMatrix) -> Result<Complex> {
    if rho.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: a.dim(),
        });
    }
    // Tr(ρA) = Σ_ij ρ_ij A_ji, without forming the product
    let n = rho.dim();
    let mut acc = Complex::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += rho[(i, j)] * a[(j, i)];
        }
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoremCheck {
    /// `Tr(ρ^{T1} A)`
    pub lhs: Complex,
    /// `Tr(ρ A^{T1})`
    pub rhs: Complex,
    pub agree: bool,
}

/// Evaluates both sides of `⟨A⟩_{ρ^{T1}} = ⟨A^{T1}⟩_ρ` independently.
pub fn theorem1_check(rho: &DensityMatrix, a: &ComplexMatrix) -> Result<TheoremCheck> {
    let pt = pt_state(rho)?;
    if a.dim() != rho.matrix().dim() {
        return Err(Error::DimensionMismatch {
            left: rho.matrix().dim(),
            right: a.dim(),
        });
    }
    let defect = a.hermiticity_defect();
    if defect > DEFAULT_TOL * a.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation: defect });
    }
    let lhs = expectation(&pt.matrix, a)?;
    let rhs = expectation(rho.matrix(), &partial_transpose_1(a, pt.n_dim)?)?;
    Ok(TheoremCheck {
        lhs,
        rhs,
        agree: (lhs - rhs).norm() <= DEFAULT_TOL,
    })
}
