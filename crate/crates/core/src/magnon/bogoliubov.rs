//! Para-unitary diagonalization of the k = 0 magnon quadratic form.
//!
//! The Hamiltonian is `H = 1/2 Psi^dag M Psi` in the basis
//! `Psi = (a, b, a^dag, b^dag)` with bosonic metric `sigma = diag(+1, +1, -1, -1)`.
//! Diagonalization follows Colpa: `M = K^dag K` (Cholesky), then the Hermitian
//! matrix `K sigma K^dag` is diagonalized and `T = K^-1 X E^{1/2}` satisfies
//! `T^dag M T = diag(w1, w2, w1, w2)` and `T^dag sigma T = sigma`.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use super::MaterialParams;
use crate::error::{ensure_non_negative, Error, Result};

const HERMITIAN_TOL: f64 = 1e-12;

/// How the quadratic form is reduced from the lattice Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HpOrder {
    /// Quadratic Holstein-Primakoff expansion with every anisotropy term kept.
    /// Reproduces the closed-form Bogoliubov coefficients `U`, `V` exactly.
    Exact,
    /// Same structure with the on-site coefficient renormalized so that
    /// `A^2 - E^2 - D^2 = omega_E (2 omega_par + omega_perp)`: the spectrum then
    /// equals the exchange-dominated resonance formula exactly whenever
    /// `omega_perp = 0` or `B0 = 0`.
    LeadingExchange,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    pub matrix: Matrix4<Complex64>,
}

impl QuadraticHamiltonian {
    pub fn new(matrix: Matrix4<Complex64>) -> Result<Self> {
        let h = QuadraticHamiltonian { matrix };
        h.check_hermitian()?;
        Ok(h)
    }

    /// k = 0 form of the two-sublattice antiferromagnet at field `b0`:
    ///
    /// `H = (A - wH) a^dag a + (A + wH) b^dag b + E (a b + a^dag b^dag)
    ///      + D/2 (a^2 + a^dag^2 + b^2 + b^dag^2)`
    ///
    /// with `E = omega_E`, `D = omega_perp / 2`.
    pub fn holstein_primakoff(m: &MaterialParams, b0: f64, order: HpOrder) -> Result<Self> {
        m.validate()?;
        ensure_non_negative("b0", b0)?;
        let we = m.omega_exchange;
        let d = 0.5 * m.omega_hard;
        let a = match order {
            HpOrder::Exact => we + m.omega_easy + 0.5 * m.omega_hard,
            HpOrder::LeadingExchange => (we * we + d * d + we * (2.0 * m.omega_easy + m.omega_hard)).sqrt(),
        };
        let wh = m.gyro * b0;
        let c = |x: f64| Complex64::new(x, 0.0);
        #[rustfmt::skip]
        let matrix = Matrix4::new(
            c(a - wh), c(0.0),    c(d),      c(we),
            c(0.0),    c(a + wh), c(we),     c(d),
            c(d),      c(we),     c(a - wh), c(0.0),
            c(we),     c(d),      c(0.0),    c(a + wh),
        );
        Ok(QuadraticHamiltonian { matrix })
    }

    fn check_hermitian(&self) -> Result<()> {
        let scale = self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        let dev = (self.matrix - self.matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if dev > HERMITIAN_TOL * scale {
            return Err(Error::NumericalFailure(format!(
                "quadratic form is not Hermitian (deviation {:e})",
                dev / scale
            )));
        }
        // Particle-hole structure: lower-right block is the conjugate of the upper-left.
        for i in 0..2 {
            for j in 0..2 {
                let d1 = (self.matrix[(i + 2, j + 2)] - self.matrix[(i, j)].conj()).norm();
                let d2 = (self.matrix[(i + 2, j)] - self.matrix[(i, j + 2)].conj()).norm();
                if d1.max(d2) > HERMITIAN_TOL * scale {
                    return Err(Error::NumericalFailure(
                        "quadratic form violates the bosonic pairing structure".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Result of the numeric diagonalization.
#[derive(Debug, Clone)]
pub struct BogoliubovModes {
    /// `[omega_alpha, omega_beta]`, descending.
    pub frequencies: [f64; 2],
    /// Columns map normal modes `(m_alpha, m_beta, m_alpha^dag, m_beta^dag)` to
    /// sublattice operators: `Psi = T Phi`.
    pub transform: Matrix4<Complex64>,
}

impl BogoliubovModes {
    /// `sum |u|^2 - sum |v|^2` of annihilation column `mode` (0 = alpha, 1 = beta).
    pub fn normalization(&self, mode: usize) -> f64 {
        let col = self.transform.column(mode);
        col[0].norm_sqr() + col[1].norm_sqr() - col[2].norm_sqr() - col[3].norm_sqr()
    }

    /// Largest entry of `|T^dag sigma T - sigma|`.
    pub fn metric_defect(&self) -> f64 {
        let sigma = metric();
        let t = &self.transform;
        (t.adjoint() * sigma * t - sigma).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn metric() -> Matrix4<Complex64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, -1.0, -1.0).map(|x| Complex64::new(x, 0.0)))
}

/// Numeric para-unitary diagonalization of `h`.
///
/// A matrix that is not positive definite has no stable bosonic vacuum and is
/// reported as [`Error::UnstableGroundState`]; anything else that goes wrong is
/// a [`Error::NumericalFailure`].
pub fn diagonalize_numeric(h: &QuadraticHamiltonian) -> Result<BogoliubovModes> {
    h.check_hermitian()?;
    // nalgebra's complex Cholesky takes complex square roots of negative pivots,
    // so definiteness is checked on the spectrum first.
    let spectrum = h.matrix.symmetric_eigenvalues();
    let (lo, hi) = spectrum.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| (lo.min(x), hi.max(x.abs())));
    if lo <= 1e-14 * hi {
        return Err(Error::UnstableGroundState(format!("quadratic form has non-positive eigenvalue {lo:e}")));
    }
    let chol = h
        .matrix
        .cholesky()
        .ok_or_else(|| Error::UnstableGroundState("Cholesky factorization of the quadratic form failed".into()))?;
    // M = L L^dag, so K = L^dag.
    let k = chol.l().adjoint();
    let sigma = metric();
    let w = k * sigma * k.adjoint();
    let w = (w + w.adjoint()).scale(0.5);
    let eig = w.symmetric_eigen();

    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    // Positive eigenvalues first (descending), then negatives in matching order.
    let pos = [order[0], order[1]];
    let neg = [order[3], order[2]];
    if eig.eigenvalues[pos[1]] <= 0.0 || eig.eigenvalues[neg[1]] >= 0.0 {
        return Err(Error::NumericalFailure("eigenvalue signature is not (+,+,-,-)".into()));
    }
    let cols = [pos[0], pos[1], neg[0], neg[1]];
    let mut x = Matrix4::<Complex64>::zeros();
    let mut e_sqrt = Vector4::<f64>::zeros();
    for (dst, &src) in cols.iter().enumerate() {
        x.set_column(dst, &eig.eigenvectors.column(src));
        e_sqrt[dst] = eig.eigenvalues[src].abs().sqrt();
    }
    let k_inv = k.try_inverse().ok_or_else(|| Error::NumericalFailure("Cholesky factor is singular".into()))?;
    let scale = Matrix4::from_diagonal(&e_sqrt.map(|x| Complex64::new(x, 0.0)));
    let transform = k_inv * x * scale;

    let frequencies = [eig.eigenvalues[pos[0]], eig.eigenvalues[pos[1]]];
    if frequencies.iter().any(|f| !f.is_finite()) {
        return Err(Error::NumericalFailure("non-finite eigenfrequency".into()));
    }
    Ok(BogoliubovModes { frequencies, transform })
}
