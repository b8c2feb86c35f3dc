//! Closed-form susceptibilities, efficiencies and cooperativity forms.
//!
//! These are evaluated directly from the mode parameters and serve as an
//! independent check on the matrix solver in [`crate::scattering`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scattering::{MagnonBranch, ModeSystem, OpticalPort};

/// Lorentzian responses at probe frequency `omega`. `chi_o` is absent without an optical cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Susceptibilities {
    pub chi_e: Complex64,
    pub chi_alpha: Complex64,
    pub chi_beta: Complex64,
    pub chi_o: Option<Complex64>,
}

fn lorentzian(detuning: f64, width: f64) -> Complex64 {
    Complex64::new(width / 2.0, -detuning).inv()
}

pub fn susceptibilities(system: &ModeSystem, omega: f64) -> Susceptibilities {
    let mw = &system.microwave;
    let chi_mu = |b: &MagnonBranch| lorentzian(omega - b.omega, b.gamma);
    let chi_o = match system.optical {
        OpticalPort::Cavity { delta_omega_o, kappa_oe, kappa_oi, .. } => {
            Some(lorentzian(omega + delta_omega_o, kappa_oe + kappa_oi))
        }
        OpticalPort::Itinerant { .. } => None,
    };
    Susceptibilities {
        chi_e: lorentzian(omega - mw.omega_e, mw.kappa()),
        chi_alpha: chi_mu(&system.magnons[0]),
        chi_beta: chi_mu(&system.magnons[1]),
        chi_o,
    }
}

fn cavity_parts(system: &ModeSystem) -> Result<(f64, [f64; 2])> {
    match system.optical {
        OpticalPort::Cavity { kappa_oe, zeta, .. } => Ok((kappa_oe, zeta)),
        OpticalPort::Itinerant { .. } => Err(Error::invalid("configuration", "expected an optical cavity")),
    }
}

fn itinerant_parts(system: &ModeSystem) -> Result<[f64; 2]> {
    match system.optical {
        OpticalPort::Itinerant { xi, .. } => Ok(xi),
        OpticalPort::Cavity { .. } => Err(Error::invalid("configuration", "expected itinerant light")),
    }
}

/// Two-mode efficiency with an optical cavity, denominator grouped as printed:
/// the cross term enters as `(zeta_a g_b - zeta_b g_a)^2 chi_a chi_b`.
pub fn eta_with_cavity_full(system: &ModeSystem, omega: f64) -> Result<f64> {
    let (kappa_oe, [za, zb]) = cavity_parts(system)?;
    let [ma, mb] = system.magnons;
    let chi = susceptibilities(system, omega);
    let (ca, cb) = (chi.chi_alpha, chi.chi_beta);
    let ie = chi.chi_e.inv();
    let io = chi.chi_o.expect("cavity configuration").inv();
    let num = (system.microwave.kappa_ee * kappa_oe).sqrt() * (zb * mb.g * cb + za * ma.g * ca);
    let cross = za * mb.g - zb * ma.g;
    let den = zb * zb * cb * ie
        + za * za * ca * ie
        + ie * io
        + cross * cross * ca * cb
        + mb.g * mb.g * cb * io
        + ma.g * ma.g * ca * io;
    Ok((num / den).norm_sqr())
}

/// Same quantity with the cross term expanded into
/// `zeta_a^2 g_b^2 + zeta_b^2 g_a^2 - 2 zeta_a zeta_b g_a g_b` and everything
/// multiplied through by `chi_e chi_o`.
pub fn eta_with_cavity_expanded(system: &ModeSystem, omega: f64) -> Result<f64> {
    let (kappa_oe, [za, zb]) = cavity_parts(system)?;
    let [ma, mb] = system.magnons;
    let chi = susceptibilities(system, omega);
    let (ce, co) = (chi.chi_e, chi.chi_o.expect("cavity configuration"));
    let (ca, cb) = (chi.chi_alpha, chi.chi_beta);
    let num = (system.microwave.kappa_ee * kappa_oe).sqrt() * ce * co * (za * ma.g * ca + zb * mb.g * cb);
    let mixed = za * za * mb.g * mb.g + zb * zb * ma.g * ma.g - 2.0 * za * zb * ma.g * mb.g;
    let den = 1.0
        + co * (za * za * ca + zb * zb * cb)
        + ce * (ma.g * ma.g * ca + mb.g * mb.g * cb)
        + ce * co * ca * cb * mixed;
    Ok((num / den).norm_sqr())
}

/// Single-mode efficiency with an optical cavity for branch `mode` (0 = alpha, 1 = beta).
pub fn eta_with_cavity_single(system: &ModeSystem, mode: usize, omega: f64) -> Result<f64> {
    let (kappa_oe, zeta) = cavity_parts(system)?;
    let (z, g) = (zeta[mode], system.magnons[mode].g);
    let chi = susceptibilities(system, omega);
    let ie = chi.chi_e.inv();
    let io = chi.chi_o.expect("cavity configuration").inv();
    let im = [chi.chi_alpha, chi.chi_beta][mode].inv();
    let num = (system.microwave.kappa_ee * kappa_oe).sqrt() * z * g;
    let den = z * z * ie + g * g * io + im * ie * io;
    Ok((num / den).norm_sqr())
}

/// Two-mode efficiency with itinerant light.
pub fn eta_without_cavity_full(system: &ModeSystem, omega: f64) -> Result<f64> {
    let [xa, xb] = itinerant_parts(system)?;
    let [ma, mb] = system.magnons;
    let chi = susceptibilities(system, omega);
    let (ca, cb) = (chi.chi_alpha, chi.chi_beta);
    let num = system.microwave.kappa_ee.sqrt() * (xa.sqrt() * ma.g * ca + xb.sqrt() * mb.g * cb);
    let den = ma.g * ma.g * ca + mb.g * mb.g * cb + chi.chi_e.inv();
    Ok((num / den).norm_sqr())
}

/// Single-mode efficiency with itinerant light.
pub fn eta_without_cavity_single(system: &ModeSystem, mode: usize, omega: f64) -> Result<f64> {
    let xi = itinerant_parts(system)?;
    let g = system.magnons[mode].g;
    let chi = susceptibilities(system, omega);
    let im = [chi.chi_alpha, chi.chi_beta][mode].inv();
    let num = (system.microwave.kappa_ee * xi[mode]).sqrt() * g;
    let den = g * g + im * chi.chi_e.inv();
    Ok((num / den).norm_sqr())
}

/// Closed-form efficiency matching the system's configuration (two-mode forms).
pub fn eta_closed_form(system: &ModeSystem, omega: f64) -> Result<f64> {
    match system.optical {
        OpticalPort::Cavity { .. } => eta_with_cavity_full(system, omega),
        OpticalPort::Itinerant { .. } => eta_without_cavity_full(system, omega),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Cooperativities {
    pub c_em_alpha: f64,
    pub c_em_beta: f64,
    pub c_om_alpha: f64,
    pub c_om_beta: f64,
    pub eta_e: f64,
    pub eta_o: f64,
    pub eta_m_alpha: f64,
    pub eta_m_beta: f64,
}

impl Cooperativities {
    /// `C_em = 4 g^2 / (kappa_e gamma)`, `C_om = 4 zeta^2 / (kappa_o gamma)`, `eta_m = xi / gamma`.
    pub fn from_system(system: &ModeSystem) -> Self {
        let mw = &system.microwave;
        let [ma, mb] = system.magnons;
        let ke = mw.kappa();
        let mut c = Cooperativities {
            c_em_alpha: 4.0 * ma.g * ma.g / (ke * ma.gamma),
            c_em_beta: 4.0 * mb.g * mb.g / (ke * mb.gamma),
            eta_e: mw.kappa_ee / ke,
            ..Default::default()
        };
        match system.optical {
            OpticalPort::Cavity { kappa_oe, kappa_oi, zeta, .. } => {
                let ko = kappa_oe + kappa_oi;
                c.c_om_alpha = 4.0 * zeta[0] * zeta[0] / (ko * ma.gamma);
                c.c_om_beta = 4.0 * zeta[1] * zeta[1] / (ko * mb.gamma);
                c.eta_o = kappa_oe / ko;
            }
            OpticalPort::Itinerant { xi, .. } => {
                c.eta_m_alpha = xi[0] / ma.gamma;
                c.eta_m_beta = xi[1] / mb.gamma;
            }
        }
        c
    }

    pub fn c_em(&self, mode: usize) -> f64 {
        [self.c_em_alpha, self.c_em_beta][mode]
    }

    pub fn c_om(&self, mode: usize) -> f64 {
        [self.c_om_alpha, self.c_om_beta][mode]
    }

    pub fn eta_m(&self, mode: usize) -> f64 {
        [self.eta_m_alpha, self.eta_m_beta][mode]
    }
}

/// `eta_o eta_e 4 C_om C_em / (1 + C_om + C_em)^2`.
pub fn cooperativity_form_with_cavity(eta_o: f64, eta_e: f64, c_om: f64, c_em: f64) -> f64 {
    let d = 1.0 + c_om + c_em;
    eta_o * eta_e * 4.0 * c_om * c_em / (d * d)
}

/// `eta_e eta_m 4 C_em / (1 + C_em)^2`.
pub fn cooperativity_form_without_cavity(eta_e: f64, eta_m: f64, c_em: f64) -> f64 {
    let d = 1.0 + c_em;
    eta_e * eta_m * 4.0 * c_em / (d * d)
}

/// Cooperativity-form efficiency of branch `mode` for the system's configuration.
pub fn cooperativity_form(c: &Cooperativities, system: &ModeSystem, mode: usize) -> f64 {
    match system.optical {
        OpticalPort::Cavity { .. } => cooperativity_form_with_cavity(c.eta_o, c.eta_e, c.c_om(mode), c.c_em(mode)),
        OpticalPort::Itinerant { .. } => cooperativity_form_without_cavity(c.eta_e, c.eta_m(mode), c.c_em(mode)),
    }
}

/// Pins the microwave cavity, branch `mode`, and (with a cavity) the optical
/// detuning to the probe frequency `omega`. The optical susceptibility peaks at
/// `delta_omega_o = -omega`.
pub fn lock_to_resonance(system: &ModeSystem, mode: usize, omega: f64) -> ModeSystem {
    let mut s = *system;
    s.microwave.omega_e = omega;
    s.magnons[mode].omega = omega;
    if let OpticalPort::Cavity { delta_omega_o, .. } = &mut s.optical {
        *delta_omega_o = -omega;
    }
    s
}
