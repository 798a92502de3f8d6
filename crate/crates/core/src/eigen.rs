//! Cyclic Jacobi eigensolver for Hermitian matrices.

use alloc::vec::Vec;

use crate::algebra::{Complex, ComplexMatrix, DEFAULT_TOL, ZERO};
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `A = V Λ V†`, eigenvalues ascending, eigenvectors in
/// the columns of `eigenvectors`.
#[derive(Clone, Debug)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenResult {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.dim();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * self.eigenvalues[k])
                .sum()
        })
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    libm::sqrt(s)
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Each rotation zeroes one off-diagonal pair `(p, q)` with the unitary
/// `U = diag(1, e^{-iφ}) · G(c, s)` where `φ = arg a_pq` and `G` is the real
/// Givens rotation for the resulting real 2×2 block. Sweeps stop once the
/// off-diagonal Frobenius norm drops below `1e-12 · dim · max(1, ‖A‖_F)`.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<EigenResult> {
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let scale = a.max_abs().max(1.0);
    let defect = a.hermiticity_defect();
    if defect > DEFAULT_TOL * scale {
        return Err(Error::NotHermitian { deviation: defect });
    }

    let n = a.dim();
    // symmetrize so the rotations see an exactly Hermitian matrix
    let mut m = ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex::new(a[(i, i)].re, 0.0)
        } else {
            (a[(i, j)] + a[(j, i)].conj()) * 0.5
        }
    });
    let mut v = ComplexMatrix::identity(n);
    let threshold = 1e-12 * n as f64 * a.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m);
        if off < threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NotConverged {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, k| v[(i, order[k])]);
    Ok(EigenResult {
        eigenvalues,
        eigenvectors,
    })
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    eig_hermitian(a).map(|e| e.min())
}

fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // skip pairs already negligible against their diagonal
    if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        m[(p, q)] = ZERO;
        m[(q, p)] = ZERO;
        return;
    }
    let phase = apq / r;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta >= 0.0 {
        1.0 / (theta + libm::sqrt(theta * theta + 1.0))
    } else {
        -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;

    // U restricted to (p, q)
    let phase_c = phase.conj();
    let u_pp = Complex::new(c, 0.0);
    let u_pq = Complex::new(s, 0.0);
    let u_qp = phase_c * -s;
    let u_qq = phase_c * c;

    let n = m.dim();
    // A <- A U
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * u_pp + akq * u_qp;
        m[(k, q)] = akp * u_pq + akq * u_qq;
    }
    // A <- U† A
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        m[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)] = Complex::new(app - t * r, 0.0);
    m[(q, q)] = Complex::new(aqq + t * r, 0.0);
    // V <- V U
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::pauli::*;
    use crate::algebra::{kron, ONE};

    fn assert_decomposition(a: &ComplexMatrix, tol: f64) -> EigenResult {
        let e = eig_hermitian(a).unwrap();
        assert!(e.reconstruct().max_abs_diff(a).unwrap() < tol);
        let vv = &e.eigenvectors.adjoint() * &e.eigenvectors;
        assert!(vv.max_abs_diff(&ComplexMatrix::identity(a.dim())).unwrap() < tol);
        for w in e.eigenvalues.windows(2) {
            assert!(w[0] <= w[1]);
        }
        e
    }

    #[test]
    fn sigma_z_spectrum() {
        let e = assert_decomposition(&sigma_z(), 1e-12);
        assert_eq!(e.eigenvalues, [-1.0, 1.0]);
    }

    #[test]
    fn sigma_y_spectrum() {
        let e = assert_decomposition(&sigma_y(), 1e-12);
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn scaled_identity() {
        for n in 2..5 {
            let a = ComplexMatrix::identity(n * n).scale_real(1.0 / (n * n) as f64);
            let e = assert_decomposition(&a, 1e-14);
            for &l in &e.eigenvalues {
                assert!((l - 1.0 / (n * n) as f64).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn eigenvectors_satisfy_eigen_equation() {
        let a = &(&kron(&sigma_x(), &sigma_x()) + &kron(&sigma_y(), &sigma_y()))
            + &kron(&sigma_z(), &sigma_z());
        let e = assert_decomposition(&a, 1e-12);
        // σ·σ has the triplet at +1 and the singlet at -3
        assert!((e.eigenvalues[0] + 3.0).abs() < 1e-12);
        for k in 0..4 {
            let vk = e.eigenvectors.column(k);
            let av = a.apply(&vk);
            for (x, y) in av.iter().zip(&vk) {
                assert!((x - y * e.eigenvalues[k]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut a = ComplexMatrix::identity(3);
        a[(0, 1)] = ONE;
        assert!(matches!(eig_hermitian(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn swap_plus_identity_spectrum() {
        // (r/N) SWAP + ((1-r)/N²) I at N = 3, r = 0.5
        let n = 3;
        let r = 0.5;
        let a = ComplexMatrix::from_fn(n * n, |i, j| {
            let (i1, i2) = (i / n, i % n);
            let (j1, j2) = (j / n, j % n);
            let mut z = 0.0;
            if i1 == j2 && i2 == j1 {
                z += r / n as f64;
            }
            if i == j {
                z += (1.0 - r) / (n * n) as f64;
            }
            Complex::new(z, 0.0)
        });
        let e = assert_decomposition(&a, 1e-13);
        assert!((e.min() - (-0.5 / 3.0 + 0.5 / 9.0)).abs() < 1e-14);
        assert!((e.max() - (0.5 / 3.0 + 0.5 / 9.0)).abs() < 1e-14);
    }
}
