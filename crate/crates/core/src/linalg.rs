//! Small dense complex solves with singularity diagnostics.
//!
//! Backed by nalgebra's partially pivoted LU. A 1-norm condition estimate is
//! attached to every solution so callers can tell when the residual bound no
//! longer holds.

use nalgebra::{Const, SMatrix};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Above this condition number, `cond * eps` exceeds 1e-12 and the relative
/// residual guarantee of a well-conditioned solve is void.
pub const ILL_CONDITIONED: f64 = 1e-12 / f64::EPSILON;

/// Beyond this the matrix is treated as numerically singular.
pub const SINGULAR: f64 = 1.0 / f64::EPSILON;

#[derive(Debug, Clone)]
pub struct LinearSolution<const N: usize, const K: usize> {
    pub x: SMatrix<Complex64, N, K>,
    /// `||M||_1 ||M^-1||_1`.
    pub condition: f64,
}

impl<const N: usize, const K: usize> LinearSolution<N, K> {
    pub fn ill_conditioned(&self) -> bool {
        self.condition > ILL_CONDITIONED
    }
}

fn norm1<const R: usize, const C: usize>(m: &SMatrix<Complex64, R, C>) -> f64 {
    m.column_iter().map(|col| col.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Solves `M X = rhs` for all right-hand-side columns at once.
pub fn solve_complex_linear<const N: usize, const K: usize>(
    m: &SMatrix<Complex64, N, N>,
    rhs: &SMatrix<Complex64, N, K>,
) -> Result<LinearSolution<N, K>>
where
    Const<N>: nalgebra::DimMin<Const<N>, Output = Const<N>>,
{
    if m.iter().chain(rhs.iter()).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NumericalFailure("non-finite entry in linear system".into()));
    }
    let lu = m.lu();
    let inverse = lu
        .try_inverse()
        .ok_or(Error::Singular { context: "exact zero pivot in LU factorization".into(), condition: f64::INFINITY })?;
    let condition = norm1(m) * norm1(&inverse);
    if !condition.is_finite() || condition > SINGULAR {
        return Err(Error::Singular { context: "matrix is numerically singular".into(), condition });
    }
    let x = lu.solve(rhs).ok_or(Error::Singular { context: "LU solve failed".into(), condition })?;
    if condition > ILL_CONDITIONED {
        log::debug!("ill-conditioned solve: condition estimate {condition:e}");
    }
    Ok(LinearSolution { x, condition })
}
