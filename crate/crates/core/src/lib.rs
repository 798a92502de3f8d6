//! Partial transposition, Schwinger operators and discrete Wigner functions
//! for one and two qudits, plus variance-based entanglement witnesses for the
//! isotropic state.
//!
//! The crate is `no_std` and needs only `alloc`. Bipartite operators use the
//! composite index `(n1, n2) -> n1 * N + n2` throughout.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod eigen;
pub mod error;
pub mod pauli;
#[cfg(feature = "rand")]
pub mod sample;
pub mod schwinger;
pub mod states;
pub mod transpose;
pub mod wigner;
pub mod witness;

pub use algebra::{adjoint, approx_equal, kron, matmul, trace, Complex, ComplexMatrix};
pub use eigen::{eig_hermitian, EigenResult};
pub use error::{Error, Result};
pub use pauli::{check_operator_identities, run_pauli_demo, PauliReport};
pub use schwinger::SchwingerPair;
pub use states::{
    bell_state, isotropic, isotropic_with, momentum_distribution, position_distribution,
    DensityMatrix, MixingRange, MomentumDistribution, Shape,
};
pub use transpose::{
    expectation, partial_transpose_1, pt_state, theorem1_check, PartialTransposed,
};
pub use wigner::{reflect_p1, wigner_one, wigner_two, Arity, WignerGrid};
pub use witness::{
    build_omega, moments_matrix, moments_original_closed, moments_pt_closed, ppt_min_eigenvalue,
    r0_threshold, split_hk, Basis, Method, MomentReport, WitnessSpec,
};
