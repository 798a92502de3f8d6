//! Variance witnesses built from Schwinger monomials.
//!
//! `Ω = Σ_{m,l} x_ml (X1^m Z1^l)(X2^m Z2^l)†`. The variance
//! `Var(Ω) = <ΩΩ†> - |<Ω>|²` is nonnegative in every physical state, so a
//! negative value in the partially transposed isotropic state `ρ_r^{T1}`
//! certifies that `ρ_r` is entangled. Moments are available in closed form
//! for `ρ_r` and `ρ_r^{T1}` and, for small N, from dense matrices.

use alloc::vec::Vec;

use crate::algebra::{kron, omega_table, Complex, ComplexMatrix, ONE, ZERO};
use crate::eigen::min_eigenvalue;
use crate::error::{Error, Result};
use crate::schwinger::SchwingerPair;
use crate::states::isotropic;
use crate::transpose::{expectation, partial_transpose_1};

/// Largest N accepted by [`moments_matrix`].
pub const MATRIX_LIMIT: usize = 12;
/// Largest N accepted by [`ppt_min_eigenvalue`].
pub const PPT_LIMIT: usize = 50;
/// Above this N, [`ppt_min_eigenvalue`] is slow enough that callers should warn.
pub const PPT_WARN_ABOVE: usize = 12;

/// Coefficient table `x_ml`, row `m`, column `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessSpec {
    n_dim: usize,
    coeffs: Vec<Complex>,
}

impl WitnessSpec {
    /// `coeffs` is row-major, `coeffs[m * N + l] = x_ml`.
    pub fn new(n_dim: usize, coeffs: Vec<Complex>) -> Result<Self> {
        if n_dim < 2 {
            return Err(Error::InvalidDimension(n_dim));
        }
        if coeffs.len() != n_dim * n_dim {
            return Err(Error::DimensionMismatch {
                left: n_dim * n_dim,
                right: coeffs.len(),
            });
        }
        if coeffs
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(Self { n_dim, coeffs })
    }

    /// `x_ml = 1` for every `m, l`.
    pub fn all_ones(n_dim: usize) -> Result<Self> {
        Self::new(n_dim, alloc::vec![ONE; n_dim * n_dim])
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// `x_ml` with indices taken mod N.
    pub fn x(&self, m: usize, l: usize) -> Complex {
        let n = self.n_dim;
        self.coeffs[(m % n) * n + (l % n)]
    }

    fn norm_sqr_sum(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum()
    }

    fn sum(&self) -> Complex {
        self.coeffs.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Original,
    PartiallyTransposed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentReport {
    /// `<Ω>`
    pub mean: Complex,
    /// `<ΩΩ†>`
    pub second: f64,
    /// `<ΩΩ†> - |<Ω>|²`
    pub variance: f64,
    pub basis: Basis,
    pub method: Method,
}

impl MomentReport {
    fn new(mean: Complex, second: f64, basis: Basis, method: Method) -> Self {
        Self {
            mean,
            second,
            variance: second - mean.norm_sqr(),
            basis,
            method,
        }
    }
}

/// The dense `N² × N²` operator Ω.
pub fn build_omega(spec: &WitnessSpec) -> Result<ComplexMatrix> {
    let n = spec.n_dim;
    let pair = SchwingerPair::build(n)?;
    let mut omega = ComplexMatrix::zeros(n * n);
    for m in 0..n {
        for l in 0..n {
            let x = spec.x(m, l);
            if x == ZERO {
                continue;
            }
            let a = pair.monomial(m as i64, l as i64);
            let term = kron(&a, &a.adjoint()).scale(x);
            omega = &omega + &term;
        }
    }
    Ok(omega)
}

/// Hermitian parts of `Ω = H + iK`: `H = (Ω + Ω†)/2`, `K = (Ω - Ω†)/(2i)`.
pub fn split_hk(omega: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let dag = omega.adjoint();
    let h = (omega + &dag).scale_real(0.5);
    let k = (omega - &dag).scale(Complex::new(0.0, -0.5));
    (h, k)
}

fn check_r(r: f64) -> Result<()> {
    if !(r.is_finite() && (0.0..=1.0).contains(&r)) {
        return Err(Error::ParameterOutOfRange {
            name: "r",
            value: r,
        });
    }
    Ok(())
}

/// Closed-form moments of Ω in `ρ_r`.
///
/// ```text
/// <Ω>   = r Σ_l x_0l + r δ_{N even} Σ_l x_{N/2,l} ω^{l N/2} + (1-r) x_00
/// <ΩΩ†> = r Σ_{m,l,l'} x_ml x*_ml' ω^{(l'-l) m} + (1-r) Σ |x_ml|²
///       + r δ_{N even} Σ_{m,l,l'} x_ml x*_{m',l'} ω^{l m + (l' - 2l) m'},  m' = m + N/2 mod N
/// ```
///
/// The even-N terms come from `X^{2(m-m')} = I` having a second solution
/// `m' = m + N/2` besides `m' = m`.
pub fn moments_original_closed(spec: &WitnessSpec, r: f64) -> Result<MomentReport> {
    check_r(r)?;
    let n = spec.n_dim;
    let w = omega_table(n);
    let ph = |k: usize| w[k % n];
    let even = n.is_multiple_of(2);
    let half = n / 2;

    let mut mean_coherent: Complex = (0..n).map(|l| spec.x(0, l)).sum();
    if even {
        mean_coherent += (0..n)
            .map(|l| spec.x(half, l) * ph(l * half))
            .sum::<Complex>();
    }
    let mean = mean_coherent * r + spec.x(0, 0) * (1.0 - r);

    let mut coherent = ZERO;
    for m in 0..n {
        for l in 0..n {
            let x = spec.x(m, l);
            for lp in 0..n {
                // ω^{(l'-l) m}
                coherent += x * spec.x(m, lp).conj() * ph((lp + n - l) * m);
                if even {
                    let mp = m + half;
                    // ω^{l m + (l' - 2l) m'}
                    let e = l * m + (lp + 2 * n - 2 * l) * mp;
                    coherent += x * spec.x(mp, lp).conj() * ph(e);
                }
            }
        }
    }
    let second = r * coherent.re + (1.0 - r) * spec.norm_sqr_sum();
    Ok(MomentReport::new(
        mean,
        second,
        Basis::Original,
        Method::ClosedForm,
    ))
}

/// `Σ_{m,l,m',l'} x_ml x*_m'l' ω^{m l' - m' l}`.
pub fn pt_kernel(spec: &WitnessSpec) -> Complex {
    let n = spec.n_dim;
    let w = omega_table(n);
    let mut acc = ZERO;
    for m in 0..n {
        for l in 0..n {
            let x = spec.x(m, l);
            for mp in 0..n {
                for lp in 0..n {
                    let k = (m * lp + n * n - mp * l) % n;
                    acc += x * spec.x(mp, lp).conj() * w[k];
                }
            }
        }
    }
    acc
}

/// `Σ_{m,l,m',l'} ω^{m l' - m' l}` by an explicit loop over all N⁴ index
/// tuples. Phase indices are tallied as integers first, so the result is the
/// exact count-weighted sum of N roots of unity. Equals N².
pub fn all_ones_kernel(n_dim: usize) -> Complex {
    let n = n_dim;
    let mut counts = alloc::vec![0u64; n];
    for m in 0..n {
        for l in 0..n {
            for mp in 0..n {
                let neg = (n * n - mp * l) % n;
                for lp in 0..n {
                    counts[(m * lp + neg) % n] += 1;
                }
            }
        }
    }
    let w = omega_table(n);
    counts.iter().zip(&w).map(|(&c, &z)| z * c as f64).sum()
}

/// Closed-form moments of Ω in `ρ_r^{T1}`.
///
/// ```text
/// <Ω>   = r Σ x_ml + (1-r) x_00
/// <ΩΩ†> = r Σ x_ml x*_m'l' ω^{m l' - m' l} + (1-r) Σ |x_ml|²
/// ```
pub fn moments_pt_closed(spec: &WitnessSpec, r: f64) -> Result<MomentReport> {
    check_r(r)?;
    let mean = spec.sum() * r + spec.x(0, 0) * (1.0 - r);
    let second = r * pt_kernel(spec).re + (1.0 - r) * spec.norm_sqr_sum();
    Ok(MomentReport::new(
        mean,
        second,
        Basis::PartiallyTransposed,
        Method::ClosedForm,
    ))
}

/// Moments from dense matrices: `Tr(ρ Ω)` and `Tr(ρ ΩΩ†)` with `ρ = ρ_r` or
/// `ρ_r^{T1}`.
pub fn moments_matrix(spec: &WitnessSpec, r: f64, basis: Basis) -> Result<MomentReport> {
    let n = spec.n_dim;
    if n > MATRIX_LIMIT {
        return Err(Error::TooLarge {
            n_dim: n,
            limit: MATRIX_LIMIT,
        });
    }
    check_r(r)?;
    let rho = isotropic(n, r)?.into_matrix();
    let rho = match basis {
        Basis::Original => rho,
        Basis::PartiallyTransposed => partial_transpose_1(&rho, n)?,
    };
    let omega = build_omega(spec)?;
    let oo = &omega * &omega.adjoint();
    let mean = expectation(&rho, &omega)?;
    let second = expectation(&rho, &oo)?.re;
    Ok(MomentReport::new(mean, second, basis, Method::Matrix))
}

/// `Var(Ω)` in `ρ_r^{T1}` for all-ones coefficients:
/// `r K + (1-r) N² - [r N² + (1-r)]²` with `K` the explicit kernel sum.
pub fn variance_pt_all_ones(n_dim: usize, r: f64) -> f64 {
    variance_pt_all_ones_with_kernel(n_dim, r, all_ones_kernel(n_dim).re)
}

fn variance_pt_all_ones_with_kernel(n_dim: usize, r: f64, kernel: f64) -> f64 {
    let n2 = (n_dim * n_dim) as f64;
    let mean = r * n2 + (1.0 - r);
    r * kernel + (1.0 - r) * n2 - mean * mean
}

/// `Var(Ω)` in `ρ_r` for all-ones coefficients: `N² - [r N + (1-r)]²`.
pub fn variance_original_all_ones(n_dim: usize, r: f64) -> f64 {
    let n = n_dim as f64;
    let mean = r * n + (1.0 - r);
    n * n - mean * mean
}

/// `Var(Ω)_{ρ_r^{T1}}` as the quadratic `a r² + b r + c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VarianceQuadratic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl VarianceQuadratic {
    pub fn eval(&self, r: f64) -> f64 {
        (self.a * r + self.b) * r + self.c
    }

    /// From `<ΩΩ†> = r Q + (1-r) P` and `<Ω> = x00 + r D`.
    fn from_parts(kernel: f64, norm_sqr: f64, x00: Complex, sum: Complex) -> Self {
        let d = sum - x00;
        Self {
            a: -d.norm_sqr(),
            b: kernel - norm_sqr - 2.0 * (x00.conj() * d).re,
            c: norm_sqr - x00.norm_sqr(),
        }
    }

    /// The nonnegative root, in closed form.
    fn positive_root(&self) -> Option<f64> {
        let Self { a, b, c } = *self;
        if a == 0.0 {
            return (b < 0.0).then(|| -c / b);
        }
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return None;
        }
        let s = libm::sqrt(disc);
        // a < 0 and c >= 0, so exactly one root is >= 0
        Some(if b < 0.0 {
            2.0 * c / (s - b)
        } else {
            (-b - s) / (2.0 * a)
        })
    }
}

pub fn pt_variance_quadratic(spec: &WitnessSpec) -> VarianceQuadratic {
    VarianceQuadratic::from_parts(
        pt_kernel(spec).re,
        spec.norm_sqr_sum(),
        spec.x(0, 0),
        spec.sum(),
    )
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    // f(lo) >= 0 > f(hi)
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Agreement demanded between the analytic and bisection roots.
pub const ROOT_TOL: f64 = 1e-12;

fn threshold_from(q: VarianceQuadratic) -> Result<f64> {
    if !(q.eval(0.0) >= 0.0 && q.eval(1.0) < 0.0) {
        return Err(Error::NoSignChange);
    }
    let analytic = q.positive_root().ok_or(Error::NoSignChange)?;
    let bisection = bisect(|r| q.eval(r), 0.0, 1.0);
    if (analytic - bisection).abs() > ROOT_TOL {
        return Err(Error::RootMismatch {
            analytic,
            bisection,
        });
    }
    Ok(analytic)
}

/// The `r0` above which `Var(Ω)_{ρ_r^{T1}}` with all-ones coefficients is
/// negative. Solved from the quadratic in r and confirmed by bisection.
pub fn r0_threshold(n_dim: usize) -> Result<f64> {
    if n_dim < 2 {
        return Err(Error::InvalidDimension(n_dim));
    }
    let n2 = (n_dim * n_dim) as f64;
    let q =
        VarianceQuadratic::from_parts(all_ones_kernel(n_dim).re, n2, ONE, Complex::new(n2, 0.0));
    threshold_from(q)
}

/// Sign-change point of `Var(Ω)_{ρ_r^{T1}}` for an arbitrary coefficient table.
pub fn witness_threshold(spec: &WitnessSpec) -> Result<f64> {
    threshold_from(pt_variance_quadratic(spec))
}

/// `ρ_r^{T1}` as a dense matrix.
pub fn isotropic_pt_matrix(n_dim: usize, r: f64) -> Result<ComplexMatrix> {
    partial_transpose_1(isotropic(n_dim, r)?.matrix(), n_dim)
}

/// Smallest eigenvalue of `ρ_r^{T1}` by dense eigensolve. Analytically
/// `-r/N + (1-r)/N²`.
pub fn ppt_min_eigenvalue(n_dim: usize, r: f64) -> Result<f64> {
    if n_dim > PPT_LIMIT {
        return Err(Error::TooLarge {
            n_dim,
            limit: PPT_LIMIT,
        });
    }
    min_eigenvalue(&isotropic_pt_matrix(n_dim, r)?)
}

/// Zero crossing of [`ppt_min_eigenvalue`] in r, by bisection on eigensolves.
pub fn ppt_threshold(n_dim: usize) -> Result<f64> {
    let lo = ppt_min_eigenvalue(n_dim, 0.0)?;
    let hi = ppt_min_eigenvalue(n_dim, 1.0)?;
    if !(lo >= 0.0 && hi < 0.0) {
        return Err(Error::NoSignChange);
    }
    let (mut a, mut b) = (0.0f64, 1.0f64);
    while b - a > 1e-13 {
        let mid = 0.5 * (a + b);
        if ppt_min_eigenvalue(n_dim, mid)? >= 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
