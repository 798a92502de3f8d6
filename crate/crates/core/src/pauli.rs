//! The two-qubit example: `|Φ+> = (|00> + |11>)/√2` and
//! `A = σx⊗σx + σy⊗σy + σz⊗σz`, whose variance in `ρ^{T1}` is negative.

use crate::algebra::pauli::{sigma_x, sigma_y, sigma_z};
use crate::algebra::{kron, ComplexMatrix};
use crate::error::Result;
use crate::states::bell_state;
use crate::transpose::{expectation, partial_transpose_1, pt_state};

/// Moments of A in `|Φ+><Φ+|` and in its partial transpose.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliReport {
    /// `<A>_ρ`
    pub mean_original: f64,
    /// `<A²>_ρ`
    pub second_original: f64,
    pub var_original: f64,
    /// `<A>_{ρ^T1} = <A^T1>_ρ`
    pub mean_pt: f64,
    /// `<A²>_{ρ^T1} = <(A²)^T1>_ρ`
    pub second_pt: f64,
    /// `<(A^T1)²>_ρ`
    pub second_of_pt_op: f64,
    pub var_pt: f64,
}

impl PauliReport {
    /// The exact values `(1, 1, 0, 3, -3, 9, -12)`.
    pub const EXPECTED: PauliReport = PauliReport {
        mean_original: 1.0,
        second_original: 1.0,
        var_original: 0.0,
        mean_pt: 3.0,
        second_pt: -3.0,
        second_of_pt_op: 9.0,
        var_pt: -12.0,
    };

    /// `(name, value)` pairs in a fixed order.
    pub fn entries(&self) -> [(&'static str, f64); 7] {
        [
            ("mean_original", self.mean_original),
            ("second_original", self.second_original),
            ("var_original", self.var_original),
            ("mean_pt", self.mean_pt),
            ("second_pt", self.second_pt),
            ("second_of_pt_op", self.second_of_pt_op),
            ("var_pt", self.var_pt),
        ]
    }

    /// Largest deviation from [`PauliReport::EXPECTED`].
    pub fn max_deviation(&self) -> f64 {
        self.entries()
            .iter()
            .zip(Self::EXPECTED.entries().iter())
            .map(|((_, a), (_, b))| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `σx⊗σx + σy⊗σy + σz⊗σz`.
pub fn heisenberg_operator() -> ComplexMatrix {
    let xx = kron(&sigma_x(), &sigma_x());
    let yy = kron(&sigma_y(), &sigma_y());
    let zz = kron(&sigma_z(), &sigma_z());
    &(&xx + &yy) + &zz
}

pub fn run_pauli_demo() -> Result<PauliReport> {
    let rho = bell_state(2)?;
    let a = heisenberg_operator();
    let a2 = &a * &a;
    let a_pt = partial_transpose_1(&a, 2)?;
    let a2_pt = partial_transpose_1(&a2, 2)?;

    let mean_original = expectation(rho.matrix(), &a)?.re;
    let second_original = expectation(rho.matrix(), &a2)?.re;
    let mean_pt = expectation(rho.matrix(), &a_pt)?.re;
    let second_pt = expectation(rho.matrix(), &a2_pt)?.re;
    let second_of_pt_op = expectation(rho.matrix(), &(&a_pt * &a_pt))?.re;

    Ok(PauliReport {
        mean_original,
        second_original,
        var_original: second_original - mean_original * mean_original,
        mean_pt,
        second_pt,
        second_of_pt_op,
        var_pt: second_pt - mean_pt * mean_pt,
    })
}

/// `Var(A)` in `ρ^{T1}` evaluated with the transposed state instead of the
/// transposed operators: `<A²>_{ρ^T1} - <A>_{ρ^T1}²`.
pub fn var_pt_via_state() -> Result<f64> {
    let rho = bell_state(2)?;
    let pt = pt_state(&rho)?;
    let a = heisenberg_operator();
    let mean = expectation(&pt.matrix, &a)?.re;
    let second = expectation(&pt.matrix, &(&a * &a))?.re;
    Ok(second - mean * mean)
}

/// Residuals of the operator identities
/// `A² = 3 - 2A`, `(A²)^{T1} = 3 - 2A^{T1}`, `(A^{T1})² = 3 + 2A^{T1}`,
/// and the gap `‖(A²)^{T1} - (A^{T1})²‖_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorIdentities {
    pub square: f64,
    pub square_pt: f64,
    pub pt_square: f64,
    pub order_gap: f64,
}

impl OperatorIdentities {
    pub fn hold(&self, tol: f64) -> bool {
        self.square <= tol && self.square_pt <= tol && self.pt_square <= tol && self.order_gap > 0.5
    }
}

pub fn operator_identities() -> Result<OperatorIdentities> {
    let a = heisenberg_operator();
    let id3 = ComplexMatrix::identity(4).scale_real(3.0);
    let a2 = &a * &a;
    let a_pt = partial_transpose_1(&a, 2)?;
    let a2_pt = partial_transpose_1(&a2, 2)?;
    let pt_sq = &a_pt * &a_pt;
    Ok(OperatorIdentities {
        square: a2.max_abs_diff(&(&id3 - &a.scale_real(2.0)))?,
        square_pt: a2_pt.max_abs_diff(&(&id3 - &a_pt.scale_real(2.0)))?,
        pt_square: pt_sq.max_abs_diff(&(&id3 + &a_pt.scale_real(2.0)))?,
        order_gap: a2_pt.max_abs_diff(&pt_sq)?,
    })
}

/// True iff all operator identities hold entrywise and `(A²)^{T1} ≠ (A^{T1})²`.
pub fn check_operator_identities() -> Result<bool> {
    Ok(operator_identities()?.hold(1e-12))
}
