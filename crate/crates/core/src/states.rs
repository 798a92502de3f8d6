//! Density matrices for one qudit or a pair of qudits, the generalized Bell
//! and isotropic states, and position/momentum distributions.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{omega_table, Complex, ComplexMatrix, DEFAULT_TOL, ZERO};
use crate::eigen::min_eigenvalue;
use crate::error::{Error, Result};

/// Eigenvalues down to this are treated as zero when checking positivity.
pub const PSD_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Single(usize),
    Bipartite(usize),
}

impl Shape {
    /// Single-particle dimension N.
    pub fn n_dim(self) -> usize {
        match self {
            Shape::Single(n) | Shape::Bipartite(n) => n,
        }
    }

    /// Dimension of the full Hilbert space (N or N²).
    pub fn total_dim(self) -> usize {
        match self {
            Shape::Single(n) => n,
            Shape::Bipartite(n) => n * n,
        }
    }

    pub fn is_bipartite(self) -> bool {
        matches!(self, Shape::Bipartite(_))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Single(n) => write!(f, "single (N = {n})"),
            Shape::Bipartite(n) => write!(f, "bipartite (N = {n})"),
        }
    }
}

/// Accepted mixing parameters for [`isotropic_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MixingRange {
    /// `0 <= r <= 1`, a convex mixture of the Bell and maximally mixed states.
    #[default]
    Convex,
    /// `-1/(N²-1) <= r <= 1`, every r for which ρ_r is positive.
    Positive,
}

/// A Hermitian, unit-trace matrix with its system shape. `validated` records
/// that positivity has been established.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    shape: Shape,
    validated: bool,
}

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix, shape: Shape) -> Result<Self> {
        let mut rho = Self::new_unvalidated(matrix, shape)?;
        let min = min_eigenvalue(&rho.matrix)?;
        if min < -PSD_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        rho.validated = true;
        Ok(rho)
    }

    /// Checks Hermiticity and unit trace only. Used for partially transposed
    /// states, which need not be positive.
    pub fn new_unvalidated(matrix: ComplexMatrix, shape: Shape) -> Result<Self> {
        if shape.n_dim() < 2 {
            return Err(Error::InvalidDimension(shape.n_dim()));
        }
        if matrix.dim() != shape.total_dim() {
            return Err(Error::DimensionMismatch {
                left: shape.total_dim(),
                right: matrix.dim(),
            });
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let defect = matrix.hermiticity_defect();
        if defect > DEFAULT_TOL {
            return Err(Error::NotHermitian { deviation: defect });
        }
        let tr = matrix.trace();
        if (tr - Complex::new(1.0, 0.0)).norm() > DEFAULT_TOL {
            return Err(Error::NotNormalized { trace: tr.re });
        }
        Ok(Self {
            matrix,
            shape,
            validated: false,
        })
    }

    /// For constructions that are positive by construction.
    fn trusted(matrix: ComplexMatrix, shape: Shape) -> Self {
        Self {
            matrix,
            shape,
            validated: true,
        }
    }

    /// `|ψ><ψ|` for a (not necessarily normalized) nonzero vector.
    pub fn from_pure(psi: &[Complex], shape: Shape) -> Result<Self> {
        if psi.len() != shape.total_dim() {
            return Err(Error::DimensionMismatch {
                left: shape.total_dim(),
                right: psi.len(),
            });
        }
        if shape.n_dim() < 2 {
            return Err(Error::InvalidDimension(shape.n_dim()));
        }
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if !(norm2 > 0.0 && norm2.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self::trusted(
            ComplexMatrix::outer(psi).scale_real(1.0 / norm2),
            shape,
        ))
    }

    /// `I / dim`.
    pub fn maximally_mixed(shape: Shape) -> Result<Self> {
        if shape.n_dim() < 2 {
            return Err(Error::InvalidDimension(shape.n_dim()));
        }
        let d = shape.total_dim();
        Ok(Self::trusted(
            ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
            shape,
        ))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn n_dim(&self) -> usize {
        self.shape.n_dim()
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Full transpose, which for a single particle is again a valid state.
    pub fn transpose(&self) -> Self {
        Self {
            matrix: self.matrix.transpose(),
            shape: self.shape,
            validated: self.validated,
        }
    }
}

/// `|Φ+><Φ+|` with `|Φ+> = N^{-1/2} Σ_q |qq>`.
pub fn bell_state(n_dim: usize) -> Result<DensityMatrix> {
    isotropic(n_dim, 1.0)
}

/// The isotropic state `ρ_r = r |Φ+><Φ+| + (1-r) I/N²` for `0 <= r <= 1`.
pub fn isotropic(n_dim: usize, r: f64) -> Result<DensityMatrix> {
    isotropic_with(n_dim, r, MixingRange::Convex)
}

/// Matrix elements `<q1 q2|ρ_r|q1' q2'> = (r/N) δ_{q1 q2} δ_{q1' q2'} + ((1-r)/N²) δ_{q1 q1'} δ_{q2 q2'}`.
pub fn isotropic_with(n_dim: usize, r: f64, range: MixingRange) -> Result<DensityMatrix> {
    if n_dim < 2 {
        return Err(Error::InvalidDimension(n_dim));
    }
    let lower = match range {
        MixingRange::Convex => 0.0,
        MixingRange::Positive => -1.0 / ((n_dim * n_dim) as f64 - 1.0),
    };
    if !(r.is_finite() && r >= lower && r <= 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "r",
            value: r,
        });
    }
    let n = n_dim as f64;
    let matrix = ComplexMatrix::from_fn(n_dim * n_dim, |i, j| {
        let (q1, q2) = (i / n_dim, i % n_dim);
        let (p1, p2) = (j / n_dim, j % n_dim);
        let mut v = 0.0;
        if q1 == q2 && p1 == p2 {
            v += r / n;
        }
        if i == j {
            v += (1.0 - r) / (n * n);
        }
        Complex::new(v, 0.0)
    });
    Ok(DensityMatrix::trusted(matrix, Shape::Bipartite(n_dim)))
}

/// Momentum distribution over `Z_N` (single) or `Z_N × Z_N` (bipartite,
/// index `p1 * N + p2`).
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumDistribution {
    pub shape: Shape,
    pub values: Vec<f64>,
}

impl MomentumDistribution {
    pub fn single(&self, p: usize) -> f64 {
        self.values[p]
    }

    pub fn joint(&self, p1: usize, p2: usize) -> f64 {
        self.values[p1 * self.shape.n_dim() + p2]
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Momentum distribution of a validated state.
pub fn momentum_distribution(rho: &DensityMatrix) -> Result<MomentumDistribution> {
    if !rho.validated {
        return Err(Error::NotValidated);
    }
    momentum_distribution_of(&rho.matrix, rho.shape)
}

/// The momentum quadratic form for any Hermitian matrix of the given shape:
///
/// `P(p1, p2) = (1/N²) Σ <n1 n2|ρ|n1' n2'> ω^{p1 (n1' - n1)} ω^{p2 (n2' - n2)}`
///
/// and its one-variable restriction for a single particle.
pub fn momentum_distribution_of(
    matrix: &ComplexMatrix,
    shape: Shape,
) -> Result<MomentumDistribution> {
    if matrix.dim() != shape.total_dim() {
        return Err(Error::DimensionMismatch {
            left: shape.total_dim(),
            right: matrix.dim(),
        });
    }
    let n = shape.n_dim();
    let w = omega_table(n);
    let d = shape.total_dim();
    let labels: Vec<Vec<usize>> = match shape {
        Shape::Single(_) => (0..n).map(|p| vec![p]).collect(),
        Shape::Bipartite(_) => (0..n * n).map(|k| vec![k / n, k % n]).collect(),
    };
    // phase[idx] = ω^{p·n(idx)}, where n(idx) are the position labels of basis state idx
    let mut values = Vec::with_capacity(labels.len());
    let mut max_imag = 0.0f64;
    for p in &labels {
        let phase: Vec<Complex> = (0..d)
            .map(|idx| {
                let k = match shape {
                    Shape::Single(_) => p[0] * idx,
                    Shape::Bipartite(_) => p[0] * (idx / n) + p[1] * (idx % n),
                };
                w[k % n]
            })
            .collect();
        let mut acc = ZERO;
        for i in 0..d {
            let mut row = ZERO;
            for j in 0..d {
                row += matrix[(i, j)] * phase[j];
            }
            acc += phase[i].conj() * row;
        }
        let acc = acc / d as f64;
        max_imag = max_imag.max(acc.im.abs());
        values.push(acc.re);
    }
    if max_imag > DEFAULT_TOL {
        return Err(Error::ImaginaryResidue { max_imag });
    }
    Ok(MomentumDistribution { shape, values })
}

/// Diagonal of ρ in the reference (position) basis.
pub fn position_distribution(rho: &DensityMatrix) -> Result<Vec<f64>> {
    if !rho.validated {
        return Err(Error::NotValidated);
    }
    let d = rho.matrix.dim();
    let diag: Vec<Complex> = (0..d).map(|i| rho.matrix[(i, i)]).collect();
    let max_imag = diag.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if max_imag > 1e-12 {
        return Err(Error::ImaginaryResidue { max_imag });
    }
    Ok(diag.into_iter().map(|z| z.re).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ONE;

    #[test]
    fn bell_state_qubits() {
        let rho = bell_state(2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if [0, 3].contains(&i) && [0, 3].contains(&j) {
                    0.5
                } else {
                    0.0
                };
                assert!((rho.matrix()[(i, j)].re - expected).abs() < 1e-15);
                assert_eq!(rho.matrix()[(i, j)].im, 0.0);
            }
        }
    }

    #[test]
    fn bell_state_is_pure_and_normalized() {
        for n in 2..7 {
            let rho = bell_state(n).unwrap();
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
            assert!((rho.purity() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn isotropic_endpoints() {
        for n in [2, 3, 5] {
            let rho1 = isotropic(n, 1.0).unwrap();
            let bell = bell_state(n).unwrap();
            assert_eq!(rho1.matrix(), bell.matrix());
            let rho0 = isotropic(n, 0.0).unwrap();
            let mixed = ComplexMatrix::identity(n * n).scale_real(1.0 / (n * n) as f64);
            assert!(rho0.matrix().max_abs_diff(&mixed).unwrap() < 1e-15);
        }
        let rho = isotropic(2, 0.5).unwrap();
        assert!((rho.matrix()[(0, 3)].re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn isotropic_range_checks() {
        assert!(matches!(
            isotropic(3, 1.1),
            Err(Error::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            isotropic(3, -0.05),
            Err(Error::ParameterOutOfRange { .. })
        ));
        assert!(isotropic(3, f64::NAN).is_err());
        assert!(isotropic_with(3, -0.05, MixingRange::Positive).is_ok());
        assert!(isotropic_with(3, -0.2, MixingRange::Positive).is_err());
        assert_eq!(isotropic(1, 0.5).unwrap_err(), Error::InvalidDimension(1));
    }

    #[test]
    fn isotropic_is_positive_over_its_range() {
        for n in [2usize, 3, 5] {
            let lower = -1.0 / ((n * n) as f64 - 1.0);
            for k in 0..=10 {
                let r = k as f64 / 10.0;
                let rho = isotropic(n, r).unwrap();
                assert!(DensityMatrix::new(rho.into_matrix(), Shape::Bipartite(n)).is_ok());
            }
            let rho = isotropic_with(n, lower, MixingRange::Positive).unwrap();
            assert!(min_eigenvalue(rho.matrix()).unwrap() > -1e-12);
        }
    }

    #[test]
    fn new_rejects_invalid_matrices() {
        let shape = Shape::Single(2);
        let not_unit = ComplexMatrix::identity(2);
        assert!(matches!(
            DensityMatrix::new(not_unit, shape),
            Err(Error::NotNormalized { .. })
        ));
        let mut herm = ComplexMatrix::identity(2).scale_real(0.5);
        herm[(0, 1)] = ONE;
        assert!(matches!(
            DensityMatrix::new(herm, shape),
            Err(Error::NotHermitian { .. })
        ));
        let negative = ComplexMatrix::diagonal(&[Complex::new(1.5, 0.0), Complex::new(-0.5, 0.0)]);
        assert!(matches!(
            DensityMatrix::new(negative.clone(), shape),
            Err(Error::NotPositive { .. })
        ));
        let unvalidated = DensityMatrix::new_unvalidated(negative, shape).unwrap();
        assert!(!unvalidated.is_validated());
        assert_eq!(
            momentum_distribution(&unvalidated),
            Err(Error::NotValidated)
        );
        assert!(DensityMatrix::new(ComplexMatrix::identity(3), Shape::Single(2)).is_err());
    }

    #[test]
    fn momentum_of_maximally_mixed_is_uniform() {
        let rho = DensityMatrix::maximally_mixed(Shape::Single(3)).unwrap();
        let p = momentum_distribution(&rho).unwrap();
        for v in p.values {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn momentum_of_zero_momentum_state() {
        let n = 3;
        let psi = vec![Complex::new(1.0, 0.0); n];
        let rho = DensityMatrix::from_pure(&psi, Shape::Single(n)).unwrap();
        let p = momentum_distribution(&rho).unwrap();
        assert!((p.single(0) - 1.0).abs() < 1e-14);
        assert!(p.single(1).abs() < 1e-14);
        assert!(p.single(2).abs() < 1e-14);
    }

    #[test]
    fn momentum_of_bell_state_anticorrelates() {
        let n = 3;
        let p = momentum_distribution(&bell_state(n).unwrap()).unwrap();
        for p1 in 0..n {
            for p2 in 0..n {
                let expected = if (p1 + p2) % n == 0 { 1.0 / 3.0 } else { 0.0 };
                assert!((p.joint(p1, p2) - expected).abs() < 1e-14);
            }
        }
        assert!((p.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn position_distributions() {
        let mixed = DensityMatrix::maximally_mixed(Shape::Bipartite(3)).unwrap();
        for v in position_distribution(&mixed).unwrap() {
            assert!((v - 1.0 / 9.0).abs() < 1e-15);
        }
        let bell = position_distribution(&bell_state(2).unwrap()).unwrap();
        assert_eq!(bell, vec![0.5, 0.0, 0.0, 0.5]);
        let iso = position_distribution(&isotropic(3, 0.5).unwrap()).unwrap();
        for q in 0..3 {
            assert!((iso[q * 3 + q] - (0.5 / 3.0 + 0.5 / 9.0)).abs() < 1e-15);
        }
        assert!((iso.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
