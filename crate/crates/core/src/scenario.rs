//! A fully specified transducer setup and its evaluation pipeline:
//! material -> magnon modes -> couplings -> mode system -> scattering.

use serde::{Deserialize, Serialize};

use crate::analytic::{self, Cooperativities};
use crate::couplings::{
    cavity_enhanced_zeta, heterostructure_scaling, itinerant_xi, microwave_coupling, optical_coupling,
    thickness_parameterized_couplings, CavityParams, CouplingSet, DriveParams, ModeCouplings, OpticalBackend,
    SampleGeometry, Verdict, THIN_SAMPLE_LIMIT,
};
use crate::error::{ensure_finite, ensure_non_negative, ensure_positive, Error, Result};
use crate::magnon::{
    bogoliubov_uv, kappa_coefficients, resonance_frequencies, MagnonModes, MaterialParams, ModeCoefficients,
};
use crate::scattering::{self, Configuration, MagnonBranch, MicrowavePort, ModeSystem, OpticalPort, ScatteringResult};
use crate::units::{SPEED_OF_LIGHT, THETA_F_YIG};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActiveModes {
    Alpha,
    Beta,
    Both,
}

impl ActiveModes {
    pub fn includes(self, mode: usize) -> bool {
        matches!((self, mode), (ActiveModes::Both, _) | (ActiveModes::Alpha, 0) | (ActiveModes::Beta, 1))
    }

    /// Branch whose frequency sets the resonance lock.
    pub fn lock_mode(self) -> usize {
        match self {
            ActiveModes::Alpha => 0,
            ActiveModes::Beta | ActiveModes::Both => 1,
        }
    }
}

/// Source of `g`, `zeta` and `xi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CouplingBackend {
    /// Material and geometry formulas.
    Pipeline,
    /// Calibrated power laws in the sample thickness.
    ThicknessLaw,
}

/// Source of `xi` when the pipeline backend is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum XiBackend {
    /// `G^2 (d/c)^2 P / (hbar Omega)`.
    Formula,
    /// The linear thickness law.
    ThicknessLaw,
}

/// Which frequencies are pinned to the locked magnon branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResonanceLock {
    /// Microwave cavity, the other active branch, and the optical detuning.
    Full,
    /// Microwave cavity only.
    Microwave,
    /// Nothing is moved; the probe sits at the locked branch.
    Free,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub configuration: Configuration,
    pub material: MaterialParams,
    pub geometry: SampleGeometry,
    pub cavity: CavityParams,
    pub drive: DriveParams,
    /// Static field (T).
    pub field: f64,
    pub active: ActiveModes,
    pub omega_alpha: Option<f64>,
    pub omega_beta: Option<f64>,
    pub kappa_override: Option<ModeCoefficients>,
    pub gamma_alpha: f64,
    pub gamma_beta: f64,
    pub coupling_backend: CouplingBackend,
    pub optical_backend: OpticalBackend,
    pub xi_backend: XiBackend,
    /// Replaces the computed `g` of both branches.
    pub g_override: Option<f64>,
    /// `None` means `gamma_beta`.
    pub dummy_delta: Option<f64>,
    /// Probe offset from the locked branch (rad/s).
    pub probe_offset: f64,
    pub lock: ResonanceLock,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThinSample {
    pub ratio: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub modes: MagnonModes,
    pub couplings: CouplingSet,
    pub system: ModeSystem,
    pub probe: f64,
    pub result: ScatteringResult,
    pub closed_form_eta: f64,
    pub cooperativities: Cooperativities,
    pub thin_sample: ThinSample,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.material.validate()?;
        self.geometry.validate()?;
        self.cavity.validate()?;
        self.drive.validate()?;
        ensure_non_negative("field", self.field)?;
        ensure_positive("gamma_alpha", self.gamma_alpha)?;
        ensure_positive("gamma_beta", self.gamma_beta)?;
        ensure_finite("probe_offset", self.probe_offset)?;
        for (name, w) in [("omega_alpha", self.omega_alpha), ("omega_beta", self.omega_beta)] {
            if let Some(w) = w {
                ensure_non_negative(name, w)?;
            }
        }
        if let Some(g) = self.g_override {
            ensure_non_negative("g", g)?;
        }
        if let Some(k) = self.kappa_override {
            ensure_non_negative("kappa_alpha", k.alpha)?;
            ensure_non_negative("kappa_beta", k.beta)?;
        }
        if let Some(d) = self.dummy_delta {
            ensure_finite("dummy_delta", d)?;
        }
        Ok(())
    }

    pub fn magnon_modes(&self) -> Result<MagnonModes> {
        self.validate()?;
        let (mut wa, mut wb) = resonance_frequencies(&self.material, self.field)?;
        wa = self.omega_alpha.unwrap_or(wa);
        wb = self.omega_beta.unwrap_or(wb);
        let (u, v) = bogoliubov_uv(&self.material)?;
        let k = match self.kappa_override {
            Some(k) => k,
            None => kappa_coefficients(&self.material)?,
        };
        let modes = MagnonModes {
            omega_alpha: wa,
            omega_beta: wb,
            gamma_alpha: self.gamma_alpha,
            gamma_beta: self.gamma_beta,
            kappa_alpha: k.alpha,
            kappa_beta: k.beta,
            u,
            v,
        };
        modes.validate()?;
        Ok(modes)
    }

    /// Frequency of the locked branch.
    pub fn lock_frequency(&self, modes: &MagnonModes) -> f64 {
        [modes.omega_alpha, modes.omega_beta][self.active.lock_mode()]
    }

    /// Microwave cavity frequency after applying the lock.
    fn effective_omega_e(&self, modes: &MagnonModes) -> f64 {
        match self.lock {
            ResonanceLock::Full | ResonanceLock::Microwave => self.lock_frequency(modes),
            ResonanceLock::Free => self.cavity.omega_e,
        }
    }

    pub fn couplings(&self, modes: &MagnonModes) -> Result<CouplingSet> {
        let kappas = ModeCoefficients { alpha: modes.kappa_alpha, beta: modes.kappa_beta };
        let faraday = self.material.theta_f / THETA_F_YIG;
        let set = match self.coupling_backend {
            CouplingBackend::Pipeline => {
                let cav = CavityParams { omega_e: self.effective_omega_e(modes), ..self.cavity };
                let (ga, gb) = microwave_coupling(&self.material, &self.geometry, &cav)?;
                let (sa, sb) = optical_coupling(&self.material, &self.geometry, &kappas, self.optical_backend)?;
                let xi = match self.xi_backend {
                    XiBackend::Formula => {
                        [itinerant_xi(sa, &self.geometry, &self.drive)?, itinerant_xi(sb, &self.geometry, &self.drive)?]
                    }
                    XiBackend::ThicknessLaw => law_xi(self.geometry.thickness, &kappas, faraday)?,
                };
                CouplingSet {
                    alpha: ModeCouplings {
                        microwave: ga,
                        single_photon: sa,
                        cavity_enhanced: cavity_enhanced_zeta(sa, self.cavity.n_cav)?,
                        itinerant: xi[0],
                    },
                    beta: ModeCouplings {
                        microwave: gb,
                        single_photon: sb,
                        cavity_enhanced: cavity_enhanced_zeta(sb, self.cavity.n_cav)?,
                        itinerant: xi[1],
                    },
                }
            }
            CouplingBackend::ThicknessLaw => {
                let law = thickness_parameterized_couplings(self.geometry.thickness)?.beta;
                let ratio = kappa_ratio(&kappas);
                let beta = ModeCouplings {
                    cavity_enhanced: law.cavity_enhanced * faraday,
                    itinerant: law.itinerant * faraday * faraday,
                    ..law
                };
                let alpha = ModeCouplings {
                    microwave: beta.microwave,
                    single_photon: 0.0,
                    cavity_enhanced: beta.cavity_enhanced * ratio,
                    itinerant: beta.itinerant * ratio * ratio,
                };
                CouplingSet { alpha, beta }
            }
        };
        let mut set = heterostructure_scaling(&set, self.geometry.layer_count)?;
        if let Some(g) = self.g_override {
            set.alpha.microwave = g;
            set.beta.microwave = g;
        }
        if !self.active.includes(0) {
            set.alpha = ModeCouplings::default();
        }
        if !self.active.includes(1) {
            set.beta = ModeCouplings::default();
        }
        Ok(set)
    }

    pub fn mode_system(&self, modes: &MagnonModes, c: &CouplingSet) -> ModeSystem {
        let lock_w = self.lock_frequency(modes);
        let mut omegas = [modes.omega_alpha, modes.omega_beta];
        if self.lock == ResonanceLock::Full && self.active == ActiveModes::Both {
            omegas = [lock_w, lock_w];
        }
        let microwave = MicrowavePort {
            omega_e: self.effective_omega_e(modes),
            kappa_ee: self.cavity.kappa_ee,
            kappa_ei: self.cavity.kappa_ei,
        };
        let magnons = [
            MagnonBranch { omega: omegas[0], gamma: modes.gamma_alpha, g: c.alpha.microwave },
            MagnonBranch { omega: omegas[1], gamma: modes.gamma_beta, g: c.beta.microwave },
        ];
        let optical = match self.configuration {
            Configuration::WithOpticalCavity => OpticalPort::Cavity {
                delta_omega_o: match self.lock {
                    ResonanceLock::Full => -lock_w,
                    _ => self.cavity.delta_omega_o,
                },
                kappa_oe: self.cavity.kappa_oe,
                kappa_oi: self.cavity.kappa_oi,
                zeta: [c.alpha.cavity_enhanced, c.beta.cavity_enhanced],
            },
            Configuration::WithoutOpticalCavity => OpticalPort::Itinerant {
                xi: [c.alpha.itinerant, c.beta.itinerant],
                dummy_delta: self.dummy_delta.unwrap_or(modes.gamma_beta),
            },
        };
        ModeSystem { microwave, magnons, optical }
    }

    /// Transit ratio `tau omega` of the fastest active branch.
    pub fn thin_sample(&self, modes: &MagnonModes) -> ThinSample {
        let w = (0..2)
            .filter(|&m| self.active.includes(m))
            .map(|m| [modes.omega_alpha, modes.omega_beta][m])
            .fold(0.0, f64::max);
        let ratio = self.geometry.thickness / SPEED_OF_LIGHT * w;
        let verdict = if ratio > THIN_SAMPLE_LIMIT { Verdict::Warn } else { Verdict::Pass };
        ThinSample { ratio, verdict }
    }

    /// Evaluates the scenario, warning when a no-cavity sample is outside the thin-sample regime.
    pub fn evaluate(&self) -> Result<Evaluation> {
        let e = self.evaluate_quiet()?;
        if self.configuration == Configuration::WithoutOpticalCavity && e.thin_sample.verdict == Verdict::Warn {
            log::warn!(
                "{}: tau * omega = {:.3e} exceeds {THIN_SAMPLE_LIMIT}; the thin-sample treatment of itinerant light is not valid",
                self.name,
                e.thin_sample.ratio
            );
        }
        Ok(e)
    }

    /// [`Scenario::evaluate`] without the log line.
    pub fn evaluate_quiet(&self) -> Result<Evaluation> {
        let modes = self.magnon_modes()?;
        let couplings = self.couplings(&modes)?;
        let system = self.mode_system(&modes, &couplings);
        let probe = self.lock_frequency(&modes) + self.probe_offset;
        let result = scattering::solve(&system, probe)?;
        let closed_form_eta = analytic::eta_closed_form(&system, probe)?;
        let thin_sample = self.thin_sample(&modes);
        Ok(Evaluation {
            modes,
            cooperativities: Cooperativities::from_system(&system),
            couplings,
            system,
            probe,
            result,
            closed_form_eta,
            thin_sample,
        })
    }
}

fn kappa_ratio(k: &ModeCoefficients) -> f64 {
    if k.beta == 0.0 {
        0.0
    } else {
        k.alpha / k.beta
    }
}

/// Linear-in-thickness `xi` law for the beta branch; alpha follows `G^2 ~ kappa^2`.
fn law_xi(thickness: f64, k: &ModeCoefficients, faraday: f64) -> Result<[f64; 2]> {
    let xi_b = thickness_parameterized_couplings(thickness)?.beta.itinerant * faraday * faraday;
    let r = kappa_ratio(k);
    if !xi_b.is_finite() {
        return Err(Error::NumericalFailure("non-finite xi".into()));
    }
    Ok([xi_b * r * r, xi_b])
}
