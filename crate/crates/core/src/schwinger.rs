//! Schwinger shift and clock unitaries.
//!
//! `Z|q> = ω^q |q>` and `X|q> = |q+1 mod N>` with `ω = exp(2πi/N)`, so that
//! `X^N = Z^N = I` and `Z X = ω X Z`.

use alloc::vec::Vec;

use crate::algebra::{omega_pow, Complex, ComplexMatrix, ONE};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SchwingerPair {
    n_dim: usize,
    x_op: ComplexMatrix,
    z_op: ComplexMatrix,
    omega: Complex,
}

impl SchwingerPair {
    pub fn build(n_dim: usize) -> Result<Self> {
        if n_dim < 2 {
            return Err(Error::InvalidDimension(n_dim));
        }
        let x_op = ComplexMatrix::from_fn(n_dim, |i, j| {
            if i == (j + 1) % n_dim {
                ONE
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        let diag: Vec<Complex> = (0..n_dim).map(|q| omega_pow(n_dim, q as i64)).collect();
        Ok(Self {
            n_dim,
            x_op,
            z_op: ComplexMatrix::diagonal(&diag),
            omega: omega_pow(n_dim, 1),
        })
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn x(&self) -> &ComplexMatrix {
        &self.x_op
    }

    pub fn z(&self) -> &ComplexMatrix {
        &self.z_op
    }

    pub fn omega(&self) -> Complex {
        self.omega
    }

    /// `ω^k` for this dimension.
    pub fn omega_pow(&self, k: i64) -> Complex {
        omega_pow(self.n_dim, k)
    }

    fn reduce(&self, k: i64) -> usize {
        k.rem_euclid(self.n_dim as i64) as usize
    }

    /// `X^m Z^l`, exponents taken mod N. X-power first, then Z-power.
    pub fn monomial(&self, m: i64, l: i64) -> ComplexMatrix {
        let (m, l) = (self.reduce(m), self.reduce(l));
        &self.x_op.pow(m) * &self.z_op.pow(l)
    }

    /// `(1/N) Tr[(X^m Z^l)(X^m' Z^l')†]`, which equals `δ_mm' δ_ll'`.
    pub fn trace_pair_identity(&self, m: i64, l: i64, m2: i64, l2: i64) -> Complex {
        let a = self.monomial(m, l);
        let b = self.monomial(m2, l2);
        (&a * &b.adjoint()).trace() / self.n_dim as f64
    }

    /// `(1/N) Tr[(X^m Z^l)(X^m' Z^l')† (X^m Z^l)† (X^m' Z^l')]`, which equals
    /// `ω^{m l' - m' l}`.
    pub fn trace_quad_identity(&self, m: i64, l: i64, m2: i64, l2: i64) -> Complex {
        let a = self.monomial(m, l);
        let b = self.monomial(m2, l2);
        let prod = &(&(&a * &b.adjoint()) * &a.adjoint()) * &b;
        prod.trace() / self.n_dim as f64
    }
}
