//! Coupled-mode dynamics and the input-output scattering matrix.
//!
//! Mode order is `(a, m_alpha, m_beta, b)`: microwave cavity, the two magnon
//! branches, and the optical field (cavity mode or itinerant port).
//! `S(omega) = I - B^T (-i omega I + A)^-1 B`.

use nalgebra::{Matrix4, SMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_non_negative, Error, Result};
use crate::linalg::solve_complex_linear;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Configuration {
    WithOpticalCavity,
    WithoutOpticalCavity,
}

impl Configuration {
    pub fn as_str(self) -> &'static str {
        match self {
            Configuration::WithOpticalCavity => "with-optical-cavity",
            Configuration::WithoutOpticalCavity => "without-optical-cavity",
        }
    }
}

impl std::fmt::Display for Configuration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MicrowavePort {
    pub omega_e: f64,
    pub kappa_ee: f64,
    pub kappa_ei: f64,
}

impl MicrowavePort {
    pub fn kappa(&self) -> f64 {
        self.kappa_ee + self.kappa_ei
    }
}

/// One magnon branch together with its microwave coupling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MagnonBranch {
    pub omega: f64,
    pub gamma: f64,
    pub g: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OpticalPort {
    /// Optical cavity pumped at detuning `delta_omega_o`, coupled to magnons with `zeta`.
    Cavity { delta_omega_o: f64, kappa_oe: f64, kappa_oi: f64, zeta: [f64; 2] },
    /// Itinerant light converted directly by the magnons at rates `xi`.
    /// `dummy_delta` fills the otherwise empty `A_44` slot.
    Itinerant { xi: [f64; 2], dummy_delta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeSystem {
    pub microwave: MicrowavePort,
    /// `[alpha, beta]`.
    pub magnons: [MagnonBranch; 2],
    pub optical: OpticalPort,
}

impl ModeSystem {
    pub fn configuration(&self) -> Configuration {
        match self.optical {
            OpticalPort::Cavity { .. } => Configuration::WithOpticalCavity,
            OpticalPort::Itinerant { .. } => Configuration::WithoutOpticalCavity,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mw = &self.microwave;
        ensure_finite("omega_e", mw.omega_e)?;
        ensure_non_negative("kappa_ee", mw.kappa_ee)?;
        ensure_non_negative("kappa_ei", mw.kappa_ei)?;
        for b in &self.magnons {
            ensure_finite("omega_mu", b.omega)?;
            ensure_non_negative("gamma_mu", b.gamma)?;
            ensure_finite("g_mu", b.g)?;
        }
        match self.optical {
            OpticalPort::Cavity { delta_omega_o, kappa_oe, kappa_oi, zeta } => {
                ensure_finite("delta_omega_o", delta_omega_o)?;
                ensure_non_negative("kappa_oe", kappa_oe)?;
                ensure_non_negative("kappa_oi", kappa_oi)?;
                ensure_finite("zeta_alpha", zeta[0])?;
                ensure_finite("zeta_beta", zeta[1])?;
            }
            OpticalPort::Itinerant { xi, dummy_delta } => {
                ensure_non_negative("xi_alpha", xi[0])?;
                ensure_non_negative("xi_beta", xi[1])?;
                ensure_finite("dummy_delta", dummy_delta)?;
            }
        }
        Ok(())
    }

    /// Copy with the labels of the two magnon branches exchanged.
    pub fn swapped_modes(&self) -> Self {
        let mut s = *self;
        s.magnons.swap(0, 1);
        match &mut s.optical {
            OpticalPort::Cavity { zeta, .. } => zeta.swap(0, 1),
            OpticalPort::Itinerant { xi, .. } => xi.swap(0, 1),
        }
        s
    }

    /// Copy with branch `mode` (0 = alpha, 1 = beta) decoupled from both fields.
    pub fn decoupled(&self, mode: usize) -> Self {
        let mut s = *self;
        s.magnons[mode].g = 0.0;
        match &mut s.optical {
            OpticalPort::Cavity { zeta, .. } => zeta[mode] = 0.0,
            OpticalPort::Itinerant { xi, .. } => xi[mode] = 0.0,
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsMatrices {
    pub configuration: Configuration,
    pub a: Matrix4<Complex64>,
    pub b: Matrix4<f64>,
}

pub fn build_dynamics(system: &ModeSystem) -> Result<DynamicsMatrices> {
    system.validate()?;
    let i = Complex64::i();
    let re = |x: f64| Complex64::new(x, 0.0);
    let mw = &system.microwave;
    let [ma, mb] = system.magnons;

    let mut a = Matrix4::<Complex64>::zeros();
    let mut b = Matrix4::<f64>::zeros();
    a[(0, 0)] = i * mw.omega_e + re(mw.kappa() / 2.0);
    a[(1, 1)] = i * ma.omega + re(ma.gamma / 2.0);
    a[(2, 2)] = i * mb.omega + re(mb.gamma / 2.0);
    a[(0, 1)] = i * ma.g;
    a[(1, 0)] = i * ma.g;
    a[(0, 2)] = i * mb.g;
    a[(2, 0)] = i * mb.g;
    b[(0, 0)] = mw.kappa_ee.sqrt();

    match system.optical {
        OpticalPort::Cavity { delta_omega_o, kappa_oe, kappa_oi, zeta } => {
            a[(3, 3)] = -i * delta_omega_o + re((kappa_oe + kappa_oi) / 2.0);
            a[(1, 3)] = i * zeta[0];
            a[(3, 1)] = i * zeta[0];
            a[(2, 3)] = i * zeta[1];
            a[(3, 2)] = i * zeta[1];
            b[(3, 3)] = kappa_oe.sqrt();
        }
        OpticalPort::Itinerant { xi, dummy_delta } => {
            a[(3, 3)] = re(dummy_delta);
            b[(1, 3)] = xi[0].sqrt();
            b[(2, 3)] = xi[1].sqrt();
        }
    }
    Ok(DynamicsMatrices { configuration: system.configuration(), a, b })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringResult {
    pub omega: f64,
    pub s: Matrix4<Complex64>,
    pub eta: f64,
    pub reflection: f64,
    /// 1-norm condition estimate of `-i omega I + A`.
    pub condition: f64,
}

impl ScatteringResult {
    /// `eta <= 1` and `reflection <= 1` within 1e-12.
    pub fn is_passive(&self) -> bool {
        self.eta <= 1.0 + 1e-12 && self.reflection <= 1.0 + 1e-12
    }
}

/// Exact scattering matrix at probe frequency `omega`.
pub fn scattering_matrix(dm: &DynamicsMatrices, omega: f64) -> Result<ScatteringResult> {
    ensure_finite("omega", omega)?;
    let m = dm.a - Matrix4::identity() * Complex64::new(0.0, omega);
    let b = dm.b.map(|x| Complex64::new(x, 0.0));
    let sol = solve_complex_linear(&m, &b).map_err(|e| match e {
        Error::Singular { context, condition } => {
            Error::Singular { context: singular_context(dm, omega, &context), condition }
        }
        other => other,
    })?;
    let s: SMatrix<Complex64, 4, 4> = Matrix4::identity() - b.transpose() * sol.x;
    Ok(ScatteringResult { omega, eta: efficiency(&s), reflection: reflection(&s), s, condition: sol.condition })
}

fn singular_context(dm: &DynamicsMatrices, omega: f64, base: &str) -> String {
    if dm.configuration == Configuration::WithoutOpticalCavity && dm.a[(3, 3)].re == 0.0 && omega == 0.0 {
        format!("{base}: dummy_delta = 0 with omega = 0 leaves A_44 empty in the no-cavity configuration")
    } else {
        format!("{base}: -i omega I + A at omega = {omega:e} rad/s ({} configuration)", dm.configuration)
    }
}

/// `|S_41|^2`.
pub fn efficiency(s: &Matrix4<Complex64>) -> f64 {
    let (s41, s14) = (s[(3, 0)].norm(), s[(0, 3)].norm());
    debug_assert!((s41 - s14).abs() <= 1e-12 * s41.max(1.0), "|S41| = {s41:e}, |S14| = {s14:e}");
    s41 * s41
}

/// `|S_11|^2`.
pub fn reflection(s: &Matrix4<Complex64>) -> f64 {
    s[(0, 0)].norm_sqr()
}

/// Builds the dynamics and evaluates the scattering matrix in one step.
pub fn solve(system: &ModeSystem, omega: f64) -> Result<ScatteringResult> {
    scattering_matrix(&build_dynamics(system)?, omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::angular;

    fn decoupled_cavity(kappa_ee: f64, kappa_ei: f64) -> ModeSystem {
        ModeSystem {
            microwave: MicrowavePort { omega_e: angular(20e9), kappa_ee, kappa_ei },
            magnons: [
                MagnonBranch { omega: angular(25e9), gamma: angular(1e8), g: 0.0 },
                MagnonBranch { omega: angular(20e9), gamma: angular(1e8), g: 0.0 },
            ],
            optical: OpticalPort::Cavity {
                delta_omega_o: -angular(20e9),
                kappa_oe: angular(1e8),
                kappa_oi: angular(1e8),
                zeta: [0.0, 0.0],
            },
        }
    }

    #[test]
    fn decoupled_matrix_is_diagonal() {
        let sys = decoupled_cavity(angular(1e8), angular(1e8));
        let dm = build_dynamics(&sys).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                if r != c {
                    assert_eq!(dm.a[(r, c)], Complex64::new(0.0, 0.0));
                }
            }
        }
        assert_eq!(dm.a[(0, 0)], Complex64::new(angular(1e8), angular(20e9)));
        assert_eq!(dm.a[(3, 3)], Complex64::new(angular(1e8), angular(20e9)));
    }

    #[test]
    fn critical_coupling_absorbs_on_resonance() {
        let sys = decoupled_cavity(angular(1e8), angular(1e8));
        let r = solve(&sys, angular(20e9)).unwrap();
        assert_eq!(r.eta, 0.0);
        assert!(r.reflection < 1e-24);
    }

    #[test]
    fn single_port_lorentzian() {
        let (kee, kei) = (angular(1.5e8), angular(0.5e8));
        let sys = decoupled_cavity(kee, kei);
        let det = angular(3e7);
        let r = solve(&sys, angular(20e9) + det).unwrap();
        let num = Complex64::new((kei - kee) / 2.0, -det);
        let den = Complex64::new((kee + kei) / 2.0, -det);
        let expect = (num / den).norm_sqr();
        assert!(((r.reflection - expect) / expect).abs() < 1e-9);
    }

    #[test]
    fn far_detuned_probe_reflects() {
        let sys = decoupled_cavity(angular(1e8), angular(1e8));
        let r = solve(&sys, angular(30e9)).unwrap();
        assert!((1.0 - r.reflection) < 1e-3);
    }

    #[test]
    fn no_cavity_b_structure() {
        let mut sys = decoupled_cavity(angular(1e8), angular(1e8));
        sys.optical = OpticalPort::Itinerant { xi: [4.0, 9.0], dummy_delta: 1.0 };
        let dm = build_dynamics(&sys).unwrap();
        assert_eq!(dm.b[(1, 3)], 2.0);
        assert_eq!(dm.b[(2, 3)], 3.0);
        assert_eq!(dm.b[(3, 3)], 0.0);
        assert_eq!(dm.a[(3, 3)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn no_cavity_zero_delta_zero_omega_is_singular() {
        let mut sys = decoupled_cavity(angular(1e8), angular(1e8));
        sys.optical = OpticalPort::Itinerant { xi: [1.0, 1.0], dummy_delta: 0.0 };
        match solve(&sys, 0.0) {
            Err(Error::Singular { context, .. }) => assert!(context.contains("dummy_delta"), "{context}"),
            other => panic!("expected singular error, got {other:?}"),
        }
        // Away from omega = 0 the empty slot is filled by -i omega.
        assert!(solve(&sys, angular(20e9)).is_ok());
    }

    #[test]
    fn rejects_negative_rates() {
        let sys = decoupled_cavity(-1.0, 1.0);
        assert!(matches!(build_dynamics(&sys), Err(Error::InvalidParameter { .. })));
    }
}
