//! Dense complex linear algebra.
//!
//! Matrices are square and stored row-major. Bipartite operators on
//! `C^N ⊗ C^N` use the composite index `(n1, n2) -> n1 * N + n2` everywhere in
//! this crate; [`kron`] produces exactly that layout.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Default absolute tolerance for entrywise comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

/// `exp(2πi k / n)` with `k` reduced modulo `n` first.
pub fn omega_pow(n: usize, k: i64) -> Complex {
    let k = k.rem_euclid(n as i64);
    let theta = 2.0 * PI * k as f64 / n as f64;
    Complex::new(libm::cos(theta), libm::sin(theta))
}

/// Table of `ω^k` for `k = 0..n`.
pub fn omega_table(n: usize) -> Vec<Complex> {
    (0..n).map(|k| omega_pow(n, k as i64)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn diagonal(diag: &[Complex]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    /// Builds a matrix from row-major entries, rejecting bad lengths and
    /// non-finite values.
    pub fn from_row_major(dim: usize, entries: Vec<Complex>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, entries })
    }

    /// Builds a real matrix from nested rows. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, |i, j| {
            assert_eq!(rows[i].len(), dim, "ragged matrix rows");
            Complex::new(rows[i][j], 0.0)
        })
    }

    /// The projector `|v><v|`.
    pub fn outer(v: &[Complex]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex::new(s, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_dims(self, other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let row = &self.entries[i * n..(i + 1) * n];
            let out_row = &mut out.entries[i * n..(i + 1) * n];
            for (k, &a) in row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let b_row = &other.entries[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Repeated multiplication; `pow(0)` is the identity.
    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn kron(&self, other: &Self) -> Self {
        kron(self, other)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_dims(self, other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest entrywise modulus of `A - A†`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<Complex> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn apply(&self, v: &[Complex]) -> Vec<Complex> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                self.entries[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

fn check_dims(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(())
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.entries[i * self.dim + j]
    }
}

// The operator impls panic on dimension mismatch; the fallible methods are
// the checked path.

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)
}

/// Kronecker product, entry `((i1, i2), (j1, j2)) = a[i1, j1] * b[i2, j2]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut out = ComplexMatrix::zeros(n);
    for i1 in 0..na {
        for j1 in 0..na {
            let s = a[(i1, j1)];
            if s == ZERO {
                continue;
            }
            for i2 in 0..nb {
                for j2 in 0..nb {
                    out[(i1 * nb + i2, j1 * nb + j2)] = s * b[(i2, j2)];
                }
            }
        }
    }
    out
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

pub fn trace(a: &ComplexMatrix) -> Complex {
    a.trace()
}

/// True iff the largest entrywise modulus difference is at most `tol`.
pub fn approx_equal(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(a.max_abs_diff(b)? <= tol)
}

/// Pauli matrices, `σy = [[0, -i], [i, 0]]`.
pub mod pauli {
    use super::{Complex, ComplexMatrix};

    pub fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    pub fn sigma_y() -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = Complex::new(0.0, -1.0);
        m[(1, 0)] = Complex::new(0.0, 1.0);
        m
    }

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
    }
}

#[cfg(test)]
mod tests {
    use super::pauli::*;
    use super::*;

    fn m3(seed: u64) -> ComplexMatrix {
        // small deterministic LCG; tests here only need "generic" entries
        let mut s = seed;
        let mut next = move || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        ComplexMatrix::from_fn(3, |_, _| Complex::new(next(), next()))
    }

    #[test]
    fn identity_is_neutral() {
        let m = m3(1);
        let i3 = ComplexMatrix::identity(3);
        assert_eq!(&i3 * &m, m);
        let s = sigma_y();
        assert_eq!(&ComplexMatrix::identity(2) * &s, s);
    }

    #[test]
    fn sigma_x_squares_to_identity() {
        let sx = sigma_x();
        assert_eq!(&sx * &sx, ComplexMatrix::identity(2));
    }

    #[test]
    fn matmul_rejects_mismatch() {
        let err = ComplexMatrix::identity(2).matmul(&ComplexMatrix::identity(3));
        assert_eq!(err, Err(Error::DimensionMismatch { left: 2, right: 3 }));
        assert!(approx_equal(
            &ComplexMatrix::identity(2),
            &ComplexMatrix::identity(3),
            1.0
        )
        .is_err());
    }

    #[test]
    fn kron_small_cases() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let zz = kron(&sigma_z(), &sigma_z());
        let expected = ComplexMatrix::diagonal(&[ONE, -ONE, -ONE, ONE]);
        assert_eq!(zz, expected);
    }

    #[test]
    fn kron_layout_is_row_major_pairing() {
        let a = m3(2);
        let b = m3(3);
        let k = kron(&a, &b);
        for i1 in 0..3 {
            for i2 in 0..3 {
                for j1 in 0..3 {
                    for j2 in 0..3 {
                        assert_eq!(k[(i1 * 3 + i2, j1 * 3 + j2)], a[(i1, j1)] * b[(i2, j2)]);
                    }
                }
            }
        }
    }

    #[test]
    fn trace_of_kron_is_product_of_traces() {
        let a = m3(4);
        let b = m3(5);
        let lhs = kron(&a, &b).trace();
        let rhs = a.trace() * b.trace();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn adjoint_cases() {
        assert_eq!(
            adjoint(&ComplexMatrix::identity(4)),
            ComplexMatrix::identity(4)
        );
        assert_eq!(adjoint(&sigma_y()), sigma_y());
        // cyclic shift at N = 3: X† = X²
        let x = ComplexMatrix::from_fn(3, |i, j| if i == (j + 1) % 3 { ONE } else { ZERO });
        assert_eq!(x.adjoint(), &x * &x);
    }

    #[test]
    fn trace_cases() {
        assert_eq!(trace(&ComplexMatrix::identity(5)), Complex::new(5.0, 0.0));
        let x = ComplexMatrix::from_fn(3, |i, j| if i == (j + 1) % 3 { ONE } else { ZERO });
        assert_eq!(trace(&x), ZERO);
    }

    #[test]
    fn approx_equal_cases() {
        let m = m3(6);
        assert!(approx_equal(&m, &m, 1e-12).unwrap());
        let i = ComplexMatrix::identity(3);
        assert!(!approx_equal(&i, &i.scale_real(2.0), 1e-12).unwrap());
    }

    #[test]
    fn omega_pow_reduces_exponent() {
        assert!((omega_pow(5, 3) - omega_pow(5, 3 + 5 * 1_000_000)).norm() < 1e-15);
        assert!((omega_pow(4, -1) - Complex::new(0.0, -1.0)).norm() < 1e-15);
        assert_eq!(omega_pow(7, 0), ONE);
    }

    #[test]
    fn from_row_major_validates() {
        assert!(ComplexMatrix::from_row_major(2, vec![ONE; 3]).is_err());
        assert_eq!(
            ComplexMatrix::from_row_major(1, vec![Complex::new(f64::NAN, 0.0)]),
            Err(Error::NonFinite)
        );
    }
}
