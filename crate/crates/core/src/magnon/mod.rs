//! Antiferromagnetic resonance of a two-sublattice easy-axis antiferromagnet.
//!
//! Closed forms (resonance branches, Bogoliubov coefficients, magneto-optic mode
//! coefficients) live here; [`bogoliubov`] holds the numeric para-unitary
//! diagonalization used to cross-check them.

pub mod bogoliubov;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_non_negative, ensure_positive, Error, Result};
use crate::units::{angular, ELECTRON_GYRO, THETA_F_YIG};

pub use bogoliubov::{diagonalize_numeric, BogoliubovModes, HpOrder, QuadraticHamiltonian};

/// Material constants of the antiferromagnet. Frequencies in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialParams {
    /// Exchange frequency `S Z J / hbar`.
    pub omega_exchange: f64,
    /// Easy-axis anisotropy frequency.
    pub omega_easy: f64,
    /// Hard-axis anisotropy frequency.
    pub omega_hard: f64,
    /// Gyromagnetic ratio magnitude (rad/s/T).
    pub gyro: f64,
    /// Spins per volume, `SN / V` (1/m^3).
    pub spin_density: f64,
    /// Magneto-optic sublattice asymmetry `K = K- / K+`.
    pub asymmetry: f64,
    /// Faraday rotation per sublattice per length (rad/m).
    pub theta_f: f64,
    /// Relative permittivity.
    pub eps_r: f64,
}

impl MaterialParams {
    /// MnF2: exchange 9.3 THz, anisotropy 0.15 THz, K = 0.007, 1e19 spins/mm^3.
    /// The Faraday rotation is the YIG value since no per-sublattice number exists.
    pub fn mnf2() -> Self {
        MaterialParams {
            omega_exchange: angular(9.3e12),
            omega_easy: angular(0.15e12),
            omega_hard: 0.0,
            gyro: ELECTRON_GYRO,
            spin_density: 1e28,
            asymmetry: 0.007,
            theta_f: THETA_F_YIG,
            eps_r: 5.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("omega_exchange", self.omega_exchange)?;
        ensure_positive("omega_easy", self.omega_easy)?;
        ensure_non_negative("omega_hard", self.omega_hard)?;
        ensure_positive("gyro", self.gyro)?;
        ensure_positive("spin_density", self.spin_density)?;
        ensure_finite("asymmetry", self.asymmetry)?;
        ensure_non_negative("theta_f", self.theta_f)?;
        ensure_finite("eps_r", self.eps_r)?;
        if self.eps_r < 1.0 {
            return Err(Error::invalid("eps_r", format!("must be >= 1, got {}", self.eps_r)));
        }
        Ok(())
    }

    /// Zero-field resonance of the easy-axis model, `sqrt(2 omega_E omega_par)`.
    pub fn zero_field_resonance(&self) -> f64 {
        (2.0 * self.omega_exchange * self.omega_easy).sqrt()
    }

    /// Field at which the lower branch reaches zero (easy-axis model).
    pub fn spin_flop_field(&self) -> f64 {
        self.zero_field_resonance() / self.gyro
    }

    fn require_easy_axis(&self) -> Result<()> {
        self.validate()?;
        if self.omega_hard != 0.0 {
            return Err(Error::HardAxisUnsupported { omega_perp: self.omega_hard });
        }
        Ok(())
    }
}

/// The two magnon branches entering the transduction model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MagnonModes {
    pub omega_alpha: f64,
    pub omega_beta: f64,
    pub gamma_alpha: f64,
    pub gamma_beta: f64,
    pub kappa_alpha: f64,
    pub kappa_beta: f64,
    pub u: f64,
    pub v: f64,
}

impl MagnonModes {
    pub fn validate(&self) -> Result<()> {
        ensure_non_negative("omega_beta", self.omega_beta)?;
        ensure_finite("omega_alpha", self.omega_alpha)?;
        if self.omega_alpha < self.omega_beta {
            return Err(Error::invalid(
                "omega_alpha",
                format!("must be >= omega_beta ({:e} < {:e})", self.omega_alpha, self.omega_beta),
            ));
        }
        ensure_positive("gamma_alpha", self.gamma_alpha)?;
        ensure_positive("gamma_beta", self.gamma_beta)?;
        ensure_finite("kappa_alpha", self.kappa_alpha)?;
        ensure_finite("kappa_beta", self.kappa_beta)?;
        Ok(())
    }
}

/// Magneto-optic mode coefficients `kappa_alpha`, `kappa_beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeCoefficients {
    pub alpha: f64,
    pub beta: f64,
}

/// Antiferromagnetic resonance branches `(omega_alpha, omega_beta)` at field `b0` (T).
///
/// Evaluated through the sum and difference of the branches so that the
/// Zeeman splitting keeps full relative precision at small fields.
pub fn resonance_frequencies(m: &MaterialParams, b0: f64) -> Result<(f64, f64)> {
    m.validate()?;
    ensure_non_negative("b0", b0)?;
    let omega_h = m.gyro * b0;
    // The lower branch reaches zero at the same field for any omega_perp.
    if omega_h > m.zero_field_resonance() * (1.0 + 1e-12) {
        return Err(Error::BeyondSpinFlop { field: b0, spin_flop: m.spin_flop_field() });
    }
    let stiff = m.omega_exchange * (2.0 * m.omega_easy + m.omega_hard);
    let base = stiff + omega_h * omega_h;
    let split =
        (m.omega_exchange * m.omega_exchange * m.omega_hard * m.omega_hard + 4.0 * omega_h * omega_h * stiff).sqrt();

    // omega_alpha^2 omega_beta^2 = base^2 - split^2
    let product_sq = (base - split) * (base + split);
    let product = if product_sq >= 0.0 {
        product_sq.sqrt()
    } else if product_sq >= -1e-12 * base * base {
        0.0
    } else {
        return Err(Error::BeyondSpinFlop { field: b0, spin_flop: m.spin_flop_field() });
    };
    let sum = (2.0 * (base + product)).sqrt();
    let diff = if split == 0.0 { 0.0 } else { std::f64::consts::SQRT_2 * split / (base + product).sqrt() };
    let alpha = 0.5 * (sum + diff);
    let beta = (0.5 * (sum - diff)).max(0.0);
    Ok((alpha, beta))
}

/// Easy-axis Bogoliubov coefficients `(U, V)`, `U > 0 > V`, `U^2 - V^2 = 1`.
pub fn bogoliubov_uv(m: &MaterialParams) -> Result<(f64, f64)> {
    m.require_easy_axis()?;
    let (we, wp) = (m.omega_exchange, m.omega_easy);
    let ratio = (we + wp) / (wp * (2.0 * we + wp)).sqrt();
    let u = ((ratio + 1.0) / 2.0).sqrt();
    let v = -((ratio - 1.0) / 2.0).sqrt();
    Ok((u, v))
}

/// `kappa_{alpha,beta} = (w_par / 2 w_E)^{1/4} +- K (2 w_E / w_par)^{1/4}`; field independent.
pub fn kappa_coefficients(m: &MaterialParams) -> Result<ModeCoefficients> {
    m.require_easy_axis()?;
    let x = m.omega_easy / (2.0 * m.omega_exchange);
    if m.omega_easy / m.omega_exchange > 0.1 {
        log::warn!(
            "omega_par / omega_E = {:.3} is not small; kappa coefficients are a leading-order estimate",
            m.omega_easy / m.omega_exchange
        );
    }
    let sym = x.powf(0.25);
    let asym = m.asymmetry * x.powf(-0.25);
    Ok(ModeCoefficients { alpha: sym + asym, beta: sym - asym })
}

/// Transverse magnetization amplitude per unit spin length, `sqrt(S/2N) (U + V) / S`,
/// which equals `(U + V) / sqrt(2 S N)`.
pub fn transverse_magnetization_factor(m: &MaterialParams, total_spins: f64) -> Result<f64> {
    ensure_positive("total_spins", total_spins)?;
    let (u, v) = bogoliubov_uv(m)?;
    Ok((u + v) / (2.0 * total_spins).sqrt())
}
