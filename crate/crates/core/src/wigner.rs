//! Discrete Wigner functions for odd prime N.
//!
//! Two particles:
//!
//! ```text
//! W(q1, q2, p1, p2) = Σ <q1' q2'|ρ|q1'' q2''>
//!                     δ(q1'' + q1' ≡ 2 q1) ω^{p1 (q1'' - q1')}
//!                     δ(q2'' + q2' ≡ 2 q2) ω^{p2 (q2'' - q2')}
//! ```
//!
//! and the one-variable restriction for a single particle. There is no 1/N
//! prefactor, so the grid sums to `N Tr ρ` (one particle) or `N² Tr ρ` (two).
//! Partial transposition of particle 1 reflects `p1 -> -p1`.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{omega_table, Complex, ComplexMatrix, DEFAULT_TOL, ZERO};
use crate::error::{Error, Result};
use crate::states::{DensityMatrix, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    One,
    Two,
}

/// Real grid indexed by `(q, p)` at `q * N + p`, or by `(q1, q2, p1, p2)` at
/// `((q1 * N + q2) * N + p1) * N + p2`.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerGrid {
    n_dim: usize,
    arity: Arity,
    values: Vec<f64>,
}

impl WignerGrid {
    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, q: usize, p: usize) -> f64 {
        debug_assert_eq!(self.arity, Arity::One);
        self.values[q * self.n_dim + p]
    }

    pub fn get2(&self, q1: usize, q2: usize, p1: usize, p2: usize) -> f64 {
        debug_assert_eq!(self.arity, Arity::Two);
        let n = self.n_dim;
        self.values[((q1 * n + q2) * n + p1) * n + p2]
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Phase-space labels of each value, in storage order: `[q, p]` or
    /// `[q1, q2, p1, p2]`.
    pub fn labels(&self) -> impl Iterator<Item = ([usize; 4], f64)> + '_ {
        let n = self.n_dim;
        self.values.iter().enumerate().map(move |(k, &w)| {
            let idx = match self.arity {
                Arity::One => [k / n, k % n, 0, 0],
                Arity::Two => [k / (n * n * n), (k / (n * n)) % n, (k / n) % n, k % n],
            };
            (idx, w)
        })
    }

    /// Largest entrywise difference to another grid of the same layout.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.n_dim != other.n_dim || self.arity != other.arity {
            return Err(Error::DimensionMismatch {
                left: self.values.len(),
                right: other.values.len(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// Trial division.
pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_odd_prime(n: usize) -> Result<()> {
    if n == 2 || !is_prime(n) {
        return Err(Error::NotOddPrime(n));
    }
    Ok(())
}

/// For each q, the pairs `(q', q'')` with `q' + q'' ≡ 2q (mod N)`.
fn midpoint_pairs(n: usize) -> Vec<Vec<(usize, usize)>> {
    (0..n)
        .map(|q| {
            let mut pairs = Vec::with_capacity(n);
            for a in 0..n {
                for b in 0..n {
                    if (a + b) % n == (2 * q) % n {
                        pairs.push((a, b));
                    }
                }
            }
            pairs
        })
        .collect()
}

fn realify(raw: Vec<Complex>, n_dim: usize, arity: Arity) -> Result<WignerGrid> {
    let max_imag = raw.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if max_imag > DEFAULT_TOL {
        return Err(Error::ImaginaryResidue { max_imag });
    }
    Ok(WignerGrid {
        n_dim,
        arity,
        values: raw.into_iter().map(|z| z.re).collect(),
    })
}

/// Wigner function of a two-particle state.
pub fn wigner_two(rho: &DensityMatrix) -> Result<WignerGrid> {
    match rho.shape() {
        Shape::Bipartite(n) => wigner_two_matrix(rho.matrix(), n),
        Shape::Single(_) => Err(Error::WrongShape {
            expected: "bipartite",
        }),
    }
}

/// Two-particle Wigner sum applied to any Hermitian `N² × N²` matrix.
pub fn wigner_two_matrix(matrix: &ComplexMatrix, n_dim: usize) -> Result<WignerGrid> {
    check_odd_prime(n_dim)?;
    let n = n_dim;
    if matrix.dim() != n * n {
        return Err(Error::NotBipartite {
            dim: matrix.dim(),
            n_dim,
        });
    }
    let w = omega_table(n);
    let pairs = midpoint_pairs(n);
    let mut raw = vec![ZERO; n * n * n * n];
    for q1 in 0..n {
        for q2 in 0..n {
            let base = (q1 * n + q2) * n * n;
            for &(a1, b1) in &pairs[q1] {
                // q1' = a1, q1'' = b1; phase exponent p1 (q1'' - q1')
                let d1 = (b1 + n - a1) % n;
                for &(a2, b2) in &pairs[q2] {
                    let d2 = (b2 + n - a2) % n;
                    let elem = matrix[(a1 * n + a2, b1 * n + b2)];
                    if elem == ZERO {
                        continue;
                    }
                    for p1 in 0..n {
                        let ph1 = elem * w[(p1 * d1) % n];
                        let row = &mut raw[base + p1 * n..base + (p1 + 1) * n];
                        for (p2, slot) in row.iter_mut().enumerate() {
                            *slot += ph1 * w[(p2 * d2) % n];
                        }
                    }
                }
            }
        }
    }
    realify(raw, n, Arity::Two)
}

/// Wigner function of a single-particle state.
pub fn wigner_one(rho: &DensityMatrix) -> Result<WignerGrid> {
    match rho.shape() {
        Shape::Single(n) => wigner_one_matrix(rho.matrix(), n),
        Shape::Bipartite(_) => Err(Error::WrongShape { expected: "single" }),
    }
}

pub fn wigner_one_matrix(matrix: &ComplexMatrix, n_dim: usize) -> Result<WignerGrid> {
    check_odd_prime(n_dim)?;
    let n = n_dim;
    if matrix.dim() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: matrix.dim(),
        });
    }
    let w = omega_table(n);
    let pairs = midpoint_pairs(n);
    let mut raw = vec![ZERO; n * n];
    for q in 0..n {
        for &(a, b) in &pairs[q] {
            let d = (b + n - a) % n;
            let elem = matrix[(a, b)];
            for p in 0..n {
                raw[q * n + p] += elem * w[(p * d) % n];
            }
        }
    }
    realify(raw, n, Arity::One)
}

/// `p1 -> -p1 mod N` (or `p -> -p` for one particle).
pub fn reflect_p1(grid: &WignerGrid) -> WignerGrid {
    let n = grid.n_dim;
    let neg = |p: usize| (n - p) % n;
    let values = match grid.arity {
        Arity::One => (0..n * n)
            .map(|k| grid.values[(k / n) * n + neg(k % n)])
            .collect(),
        Arity::Two => (0..n * n * n * n)
            .map(|k| {
                let (qq, p1, p2) = (k / (n * n), (k / n) % n, k % n);
                grid.values[(qq * n + neg(p1)) * n + p2]
            })
            .collect(),
    };
    WignerGrid {
        n_dim: n,
        arity: grid.arity,
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ONE;
    use crate::states::bell_state;

    fn basis_projector(n: usize, k: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n);
        m[(k, k)] = ONE;
        m
    }

    #[test]
    fn primality() {
        let primes: Vec<usize> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(check_odd_prime(2), Err(Error::NotOddPrime(2)));
        assert_eq!(check_odd_prime(9), Err(Error::NotOddPrime(9)));
        assert!(check_odd_prime(7).is_ok());
    }

    #[test]
    fn rejects_bad_dimensions() {
        let rho = bell_state(4).unwrap();
        assert_eq!(wigner_two(&rho), Err(Error::NotOddPrime(4)));
        let rho2 = bell_state(2).unwrap();
        let msg = alloc::format!("{}", wigner_two(&rho2).unwrap_err());
        assert!(msg.contains("N must be an odd prime"));
        let single = DensityMatrix::maximally_mixed(Shape::Single(3)).unwrap();
        assert!(matches!(wigner_two(&single), Err(Error::WrongShape { .. })));
        assert!(matches!(wigner_one(&rho), Err(Error::WrongShape { .. })));
    }

    #[test]
    fn maximally_mixed_pair_is_flat() {
        let rho = DensityMatrix::maximally_mixed(Shape::Bipartite(3)).unwrap();
        let g = wigner_two(&rho).unwrap();
        assert_eq!(g.values().len(), 81);
        for &v in g.values() {
            assert!((v - 1.0 / 9.0).abs() < 1e-14);
        }
        assert!((g.total() - 9.0).abs() < 1e-12);
    }

    #[test]
    fn ground_state_pair_is_a_position_line() {
        let n = 3;
        let rho = DensityMatrix::new(basis_projector(n * n, 0), Shape::Bipartite(n)).unwrap();
        let g = wigner_two(&rho).unwrap();
        for ([q1, q2, _, _], w) in g.labels() {
            let expected = if q1 == 0 && q2 == 0 { 1.0 } else { 0.0 };
            assert!((w - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn bell_grid_normalization() {
        let g = wigner_two(&bell_state(3).unwrap()).unwrap();
        assert!((g.total() - 9.0).abs() < 1e-10);
    }

    #[test]
    fn single_particle_examples() {
        let mixed = DensityMatrix::maximally_mixed(Shape::Single(3)).unwrap();
        for &v in wigner_one(&mixed).unwrap().values() {
            assert!((v - 1.0 / 3.0).abs() < 1e-14);
        }
        let ground = DensityMatrix::new(basis_projector(3, 0), Shape::Single(3)).unwrap();
        let g = wigner_one(&ground).unwrap();
        for q in 0..3 {
            for p in 0..3 {
                let expected = if q == 0 { 1.0 } else { 0.0 };
                assert!((g.get(q, p) - expected).abs() < 1e-14);
            }
        }
        let n = 5;
        let zero_momentum =
            DensityMatrix::from_pure(&vec![Complex::new(1.0, 0.0); n], Shape::Single(n)).unwrap();
        let g = wigner_one(&zero_momentum).unwrap();
        for q in 0..n {
            for p in 0..n {
                let expected = if p == 0 { 1.0 } else { 0.0 };
                assert!((g.get(q, p) - expected).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn reflection_is_an_involution() {
        let g = wigner_two(&bell_state(5).unwrap()).unwrap();
        let twice = reflect_p1(&reflect_p1(&g));
        assert_eq!(twice, g);
        let rho = DensityMatrix::new(basis_projector(9, 4), Shape::Bipartite(3)).unwrap();
        let flat_in_p = wigner_two(&rho).unwrap();
        assert_eq!(reflect_p1(&flat_in_p), flat_in_p);
    }

    #[test]
    fn rejects_non_hermitian_matrix() {
        let mut m = ComplexMatrix::identity(3).scale_real(1.0 / 3.0);
        m[(0, 1)] = Complex::new(0.0, 0.3);
        assert!(matches!(
            wigner_one_matrix(&m, 3),
            Err(Error::ImaginaryResidue { .. })
        ));
    }
}
