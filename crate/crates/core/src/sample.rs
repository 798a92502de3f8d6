//! Seeded random states, observables and coefficient tables.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::{Complex, ComplexMatrix};
use crate::error::Result;
use crate::states::{DensityMatrix, Shape};
use crate::witness::WitnessSpec;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Complex Ginibre matrix.
pub fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| gaussian(rng))
}

/// `G G† / Tr(G G†)` for a complex Gaussian `G`.
pub fn random_density<R: Rng + ?Sized>(shape: Shape, rng: &mut R) -> Result<DensityMatrix> {
    let g = ginibre(shape.total_dim(), rng);
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::new(gg.scale_real(1.0 / tr), shape)
}

/// `(G + G†) / 2`.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(dim, rng);
    (&g + &g.adjoint()).scale_real(0.5)
}

/// Coefficients with independent standard complex Gaussian entries.
pub fn random_witness<R: Rng + ?Sized>(n_dim: usize, rng: &mut R) -> Result<WitnessSpec> {
    WitnessSpec::new(n_dim, (0..n_dim * n_dim).map(|_| gaussian(rng)).collect())
}
