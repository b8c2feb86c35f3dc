//! Built-in parameter bundles.

use crate::couplings::{CavityParams, DriveParams, OpticalBackend, SampleGeometry};
use crate::error::{Error, Result};
use crate::magnon::{MaterialParams, ModeCoefficients};
use crate::scattering::Configuration;
use crate::scenario::{ActiveModes, CouplingBackend, ResonanceLock, Scenario, XiBackend};
use crate::units::{angular, MICROMETER, THETA_F_YIG};

pub const EASYAXIS: &str = "mnf2-easyaxis-20GHz";
pub const DEGENERATE: &str = "mnf2-degenerate-250GHz";
pub const NOCAVITY: &str = "mnf2-nocavity-20GHz";
pub const YIG_REFERENCE: &str = "yig-reference";

pub const NAMES: [&str; 4] = [EASYAXIS, DEGENERATE, NOCAVITY, YIG_REFERENCE];

/// Empirical vacuum-coupling slope, 25 mHz per sqrt(GHz), in sqrt(Hz).
pub const G0_SLOPE: f64 = 25e-3 / 31_622.776_601_683_792;

/// Cross-section used throughout, (0.1 mm)^2.
pub const CROSS_SECTION: f64 = 1e-8;

fn cavity(kappa_e_each: f64, kappa_o_each: f64, omega_e: f64) -> CavityParams {
    CavityParams {
        omega_e,
        kappa_ee: kappa_e_each,
        kappa_ei: kappa_e_each,
        delta_omega_o: -omega_e,
        kappa_oe: kappa_o_each,
        kappa_oi: kappa_o_each,
        n_cav: 1e6,
        g0_slope: G0_SLOPE,
        overlap: 1.0,
    }
}

fn telecom_drive() -> DriveParams {
    DriveParams { power: 15e-3, omega_drive: angular(193e12) }
}

/// Lower branch alone at 20 GHz, (0.1 mm)^3 sample, optical cavity.
pub fn easyaxis() -> Scenario {
    let w = angular(20e9);
    Scenario {
        name: EASYAXIS.into(),
        configuration: Configuration::WithOpticalCavity,
        material: MaterialParams::mnf2(),
        geometry: SampleGeometry { cross_section: CROSS_SECTION, thickness: 1e-4, layer_count: 1 },
        cavity: cavity(angular(100e6), angular(100e6), w),
        drive: telecom_drive(),
        field: 0.0,
        active: ActiveModes::Beta,
        omega_alpha: Some(angular(250e9)),
        omega_beta: Some(w),
        kappa_override: Some(ModeCoefficients { alpha: 0.5, beta: 0.4 }),
        gamma_alpha: angular(100e6),
        gamma_beta: angular(100e6),
        coupling_backend: CouplingBackend::Pipeline,
        optical_backend: OpticalBackend::Calibrated,
        xi_backend: XiBackend::ThicknessLaw,
        g_override: None,
        dummy_delta: None,
        probe_offset: 0.0,
        lock: ResonanceLock::Full,
    }
}

/// Both branches degenerate at 250 GHz with frequency-scaled losses.
pub fn degenerate() -> Scenario {
    let w = angular(250e9);
    Scenario {
        name: DEGENERATE.into(),
        cavity: cavity(angular(500e6), angular(100e6), w),
        active: ActiveModes::Both,
        omega_alpha: Some(w),
        omega_beta: Some(w),
        gamma_alpha: angular(1000e6),
        gamma_beta: angular(1000e6),
        g_override: Some(angular(10e6)),
        ..easyaxis()
    }
}

/// 1 um film driven by 15 mW of 193 THz light, no optical cavity.
pub fn nocavity() -> Scenario {
    Scenario {
        name: NOCAVITY.into(),
        configuration: Configuration::WithoutOpticalCavity,
        geometry: SampleGeometry { cross_section: CROSS_SECTION, thickness: MICROMETER, layer_count: 1 },
        ..easyaxis()
    }
}

/// Ferromagnet comparison: YIG spin density and Faraday rotation, unit mode coefficients.
/// Exchange and anisotropy are placeholders so the mode pipeline stays defined.
pub fn yig_reference() -> Scenario {
    let material = MaterialParams {
        spin_density: 2.1e28,
        asymmetry: 0.0,
        theta_f: THETA_F_YIG,
        eps_r: 5.0,
        ..MaterialParams::mnf2()
    };
    Scenario {
        name: YIG_REFERENCE.into(),
        material,
        kappa_override: Some(ModeCoefficients { alpha: 1.0, beta: 1.0 }),
        optical_backend: OpticalBackend::FirstPrinciples,
        ..easyaxis()
    }
}

pub fn by_name(name: &str) -> Result<Scenario> {
    match name {
        EASYAXIS => Ok(easyaxis()),
        DEGENERATE => Ok(degenerate()),
        NOCAVITY => Ok(nocavity()),
        YIG_REFERENCE => Ok(yig_reference()),
        _ => Err(Error::invalid("preset", format!("unknown preset `{name}`; known: {}", NAMES.join(", ")))),
    }
}
