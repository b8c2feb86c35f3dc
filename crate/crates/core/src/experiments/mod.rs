//! Declarative parameter sweeps over a [`Scenario`].

mod optimize;

pub use optimize::{find_optimal_thickness, OptimalThickness, DEFAULT_TOLERANCE, GRID_POINTS};

use serde::{Deserialize, Serialize};

use crate::couplings::{thin_sample_cap, Verdict};
use crate::error::{Error, Result};
use crate::scattering::Configuration;
use crate::scenario::{CouplingBackend, Evaluation, ResonanceLock, Scenario};
use crate::units::{angular, ordinary, MICROMETER, MILLIMETER, THETA_F_YIG};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepVariable {
    /// `theta_F / theta_F,YIG`.
    FaradayAngle,
    /// Sample thickness (m).
    Thickness,
    /// Probe offset from the locked branch (rad/s).
    ProbeDetuning,
    /// Heterostructure layer count.
    LayerCount,
    /// No-cavity regularizer (rad/s).
    DummyDelta,
}

impl SweepVariable {
    /// CSV column name, carrying the external unit.
    pub fn column(self) -> &'static str {
        match self {
            SweepVariable::FaradayAngle => "theta_f_ratio",
            SweepVariable::Thickness => "thickness_m",
            SweepVariable::ProbeDetuning => "detuning_hz",
            SweepVariable::LayerCount => "layer_count",
            SweepVariable::DummyDelta => "dummy_delta_hz",
        }
    }

    /// Internal value -> external unit.
    pub fn external(self, value: f64) -> f64 {
        match self {
            SweepVariable::ProbeDetuning | SweepVariable::DummyDelta => ordinary(value),
            _ => value,
        }
    }

    /// External unit -> internal value.
    pub fn internal(self, value: f64) -> f64 {
        match self {
            SweepVariable::ProbeDetuning | SweepVariable::DummyDelta => angular(value),
            _ => value,
        }
    }

    pub fn apply(self, base: &Scenario, value: f64) -> Result<Scenario> {
        let mut s = base.clone();
        match self {
            SweepVariable::FaradayAngle => s.material.theta_f = value * THETA_F_YIG,
            SweepVariable::Thickness => s.geometry.thickness = value,
            SweepVariable::ProbeDetuning => s.probe_offset = value,
            SweepVariable::LayerCount => {
                if !(value >= 1.0 && value <= f64::from(u32::MAX)) {
                    return Err(Error::invalid("layer_count", format!("must be in [1, 2^32), got {value}")));
                }
                s.geometry.layer_count = value.round() as u32;
            }
            SweepVariable::DummyDelta => s.dummy_delta = Some(value),
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

/// Inclusive range in internal units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRange {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub scale: Scale,
}

impl SweepRange {
    pub fn new(lo: f64, hi: f64, count: usize, scale: Scale) -> Result<Self> {
        let r = SweepRange { lo, hi, count, scale };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::invalid("range", format!("need finite lo < hi, got [{}, {}]", self.lo, self.hi)));
        }
        if self.count < 2 {
            return Err(Error::invalid("count", format!("need at least 2 points, got {}", self.count)));
        }
        if self.scale == Scale::Log && self.lo <= 0.0 {
            return Err(Error::invalid("range", "log scale requires lo > 0"));
        }
        Ok(())
    }

    /// Grid points with exact endpoints.
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        let last = (n - 1) as f64;
        (0..n)
            .map(|k| {
                if k == 0 {
                    return self.lo;
                }
                if k == n - 1 {
                    return self.hi;
                }
                let t = k as f64 / last;
                match self.scale {
                    Scale::Linear => self.lo + t * (self.hi - self.lo),
                    Scale::Log => (self.lo.ln() + t * (self.hi.ln() - self.lo.ln())).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub scenario: Scenario,
    pub variable: SweepVariable,
    pub range: SweepRange,
    pub lock: ResonanceLock,
}

/// One evaluated point. Rates are ordinary frequencies (Hz).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Swept variable in its external unit.
    pub value: f64,
    pub eta: f64,
    pub reflection: f64,
    pub c_em: f64,
    /// `C_om` with an optical cavity, `eta_m` without.
    pub optical_cooperativity: f64,
    pub g_hz: f64,
    /// `zeta` with an optical cavity, `xi` without.
    pub optical_coupling_hz: f64,
    /// Passive and, without a cavity, inside the thin-sample regime.
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub preset: String,
    pub configuration: Configuration,
    pub variable: SweepVariable,
    pub coupling_backend: CouplingBackend,
    pub version: String,
    /// Largest thickness (m) inside the thin-sample regime, for no-cavity runs.
    pub validity_cap_m: Option<f64>,
    /// Full width at half maximum of a detuning sweep (Hz).
    pub fwhm_hz: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub provenance: Provenance,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.value).collect()
    }

    pub fn etas(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.eta).collect()
    }
}

fn row(variable: SweepVariable, value: f64, scenario: &Scenario, e: &Evaluation) -> SweepRow {
    let mode = scenario.active.lock_mode();
    let c = &e.cooperativities;
    let m = [e.couplings.alpha, e.couplings.beta][mode];
    let cavity = scenario.configuration == Configuration::WithOpticalCavity;
    SweepRow {
        value: variable.external(value),
        eta: e.result.eta,
        reflection: e.result.reflection,
        c_em: c.c_em(mode),
        optical_cooperativity: if cavity { c.c_om(mode) } else { c.eta_m(mode) },
        g_hz: ordinary(m.microwave),
        optical_coupling_hz: ordinary(if cavity { m.cavity_enhanced } else { m.itinerant }),
        valid: e.result.is_passive() && (cavity || e.thin_sample.verdict == Verdict::Pass),
    }
}

/// Evaluates the sweep point by point, in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.range.validate()?;
    let mut base = spec.scenario.clone();
    base.lock = spec.lock;
    let rows = spec
        .range
        .points()
        .into_iter()
        .map(|v| {
            let s = spec.variable.apply(&base, v)?;
            let e = s.evaluate_quiet()?;
            Ok(row(spec.variable, v, &s, &e))
        })
        .collect::<Result<Vec<_>>>()?;
    let validity_cap_m = (base.configuration == Configuration::WithoutOpticalCavity).then(|| {
        let modes = base.magnon_modes().ok();
        modes.map(|m| thin_sample_cap(base.lock_frequency(&m))).unwrap_or(f64::NAN)
    });
    let invalid = rows.iter().filter(|r| !r.valid).count();
    if invalid > 0 {
        log::warn!("{}: {invalid} of {} sweep points are flagged invalid", base.name, rows.len());
    }
    Ok(SweepResult {
        provenance: Provenance {
            preset: base.name.clone(),
            configuration: base.configuration,
            variable: spec.variable,
            coupling_backend: base.coupling_backend,
            version: env!("CARGO_PKG_VERSION").to_string(),
            validity_cap_m,
            fwhm_hz: None,
        },
        rows,
    })
}

fn require(s: &Scenario, configuration: Configuration, what: &str) -> Result<()> {
    if s.configuration != configuration {
        return Err(Error::invalid("configuration", format!("{what} needs the {configuration} configuration")));
    }
    Ok(())
}

/// Default Faraday range: ratio in [1e-2, 1], log.
pub fn default_faraday_range() -> SweepRange {
    SweepRange { lo: 1e-2, hi: 1.0, count: 21, scale: Scale::Log }
}

/// Default thickness range: [1e-6, 1e2] mm, log.
pub fn default_thickness_range() -> SweepRange {
    SweepRange { lo: 1e-6 * MILLIMETER, hi: 1e2 * MILLIMETER, count: 81, scale: Scale::Log }
}

pub fn faraday_sweep(scenario: &Scenario, range: SweepRange) -> Result<SweepResult> {
    require(scenario, Configuration::WithOpticalCavity, "the Faraday sweep")?;
    run_sweep(&SweepSpec {
        scenario: scenario.clone(),
        variable: SweepVariable::FaradayAngle,
        range,
        lock: ResonanceLock::Full,
    })
}

fn thickness_sweep(scenario: &Scenario, range: SweepRange) -> Result<SweepResult> {
    let s = Scenario { coupling_backend: CouplingBackend::ThicknessLaw, ..scenario.clone() };
    run_sweep(&SweepSpec { scenario: s, variable: SweepVariable::Thickness, range, lock: ResonanceLock::Full })
}

/// With-cavity efficiency against thickness using the calibrated thickness laws.
pub fn thickness_sweep_with_cavity(scenario: &Scenario, range: SweepRange) -> Result<SweepResult> {
    require(scenario, Configuration::WithOpticalCavity, "the with-cavity thickness sweep")?;
    thickness_sweep(scenario, range)
}

/// No-cavity efficiency against thickness. Rows beyond the thin-sample cap are
/// kept and flagged invalid; the cap is recorded in the provenance.
pub fn thickness_sweep_without_cavity(scenario: &Scenario, range: SweepRange) -> Result<SweepResult> {
    require(scenario, Configuration::WithoutOpticalCavity, "the no-cavity thickness sweep")?;
    thickness_sweep(scenario, range)
}

/// Efficiency against probe offset, with the full width at half maximum.
pub fn detuning_sweep(scenario: &Scenario, range: SweepRange) -> Result<SweepResult> {
    let mut r = run_sweep(&SweepSpec {
        scenario: scenario.clone(),
        variable: SweepVariable::ProbeDetuning,
        range,
        lock: scenario.lock,
    })?;
    r.provenance.fwhm_hz = full_width_half_max(&r.values(), &r.etas());
    Ok(r)
}

/// Width between the half-maximum crossings on either side of the peak,
/// linearly interpolated. `None` if either crossing lies outside the data.
pub fn full_width_half_max(x: &[f64], y: &[f64]) -> Option<f64> {
    let (peak, &ymax) = y.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1))?;
    if ymax <= 0.0 {
        return None;
    }
    let half = ymax / 2.0;
    let cross = |i: usize, j: usize| x[i] + (half - y[i]) * (x[j] - x[i]) / (y[j] - y[i]);
    let left = (0..peak).rev().find(|&i| y[i] < half).map(|i| cross(i, i + 1))?;
    let right = (peak + 1..y.len()).find(|&i| y[i] < half).map(|i| cross(i - 1, i))?;
    Some(right - left)
}

/// Efficiency against layer count at a per-layer thickness of 1 um.
pub fn heterostructure_projection(scenario: &Scenario, layers: &[u32]) -> Result<SweepResult> {
    require(scenario, Configuration::WithOpticalCavity, "the heterostructure projection")?;
    let mut base = Scenario { coupling_backend: CouplingBackend::ThicknessLaw, ..scenario.clone() };
    base.geometry.thickness = MICROMETER;
    base.lock = ResonanceLock::Full;
    let rows = layers
        .iter()
        .map(|&n| {
            let s = SweepVariable::LayerCount.apply(&base, f64::from(n))?;
            let e = s.evaluate_quiet()?;
            Ok(row(SweepVariable::LayerCount, f64::from(n), &s, &e))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        provenance: Provenance {
            preset: base.name.clone(),
            configuration: base.configuration,
            variable: SweepVariable::LayerCount,
            coupling_backend: base.coupling_backend,
            version: env!("CARGO_PKG_VERSION").to_string(),
            validity_cap_m: None,
            fwhm_hz: None,
        },
        rows,
    })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let r = SweepRange::new(1e-9, 1e-1, 64, Scale::Log).unwrap();
        let p = r.points();
        assert_eq!(p.len(), 64);
        assert_eq!(p[0], 1e-9);
        assert_eq!(p[63], 1e-1);
        assert!(p.windows(2).all(|w| w[1] > w[0]));
        assert!(SweepRange::new(0.0, 1.0, 5, Scale::Log).is_err());
        assert!(SweepRange::new(1.0, 1.0, 5, Scale::Linear).is_err());
        assert!(SweepRange::new(0.0, 1.0, 1, Scale::Linear).is_err());
    }

    #[test]
    fn faraday_endpoints_and_slope() {
        let r = faraday_sweep(&presets::easyaxis(), default_faraday_range()).unwrap();
        assert_eq!(r.rows.len(), 21);
        assert!(rel(r.rows[20].eta, 7.152_057_757_457_678e-10) < 1e-9);
        assert!(rel(r.rows[0].eta, 7.152_062_324_065_305e-14) < 1e-9);
        assert!((log_log_slope(&r.values(), &r.etas()) - 2.0).abs() < 0.02);
    }

    #[test]
    fn with_cavity_product_is_constant() {
        let r = thickness_sweep_with_cavity(&presets::easyaxis(), default_thickness_range()).unwrap();
        let p0 = r.rows[0].c_em * r.rows[0].optical_cooperativity;
        for row in &r.rows {
            assert!(rel(row.c_em * row.optical_cooperativity, p0) < 1e-10);
        }
    }

    #[test]
    fn without_cavity_is_increasing_and_flags_thick_rows() {
        let r = thickness_sweep_without_cavity(&presets::nocavity(), default_thickness_range()).unwrap();
        assert!(r.rows.windows(2).all(|w| w[1].eta > w[0].eta));
        let cap = r.provenance.validity_cap_m.unwrap();
        for row in &r.rows {
            assert_eq!(row.valid, row.value <= cap, "d = {}", row.value);
        }
    }

    #[test]
    fn detuning_peak_and_symmetry() {
        let s = presets::easyaxis();
        let w = angular(500e6);
        let r = detuning_sweep(&s, SweepRange::new(-w, w, 201, Scale::Linear).unwrap()).unwrap();
        let etas = r.etas();
        let peak = etas.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
        assert_eq!(peak, 100);
        for k in 0..100 {
            assert!(rel(etas[k], etas[200 - k]) < 1e-9, "k = {k}");
        }
        assert!(etas[0] < 1e-2 * etas[100]);
        let fwhm = r.provenance.fwhm_hz.unwrap();
        assert!(fwhm > 0.0 && fwhm < 1e9);
    }

    #[test]
    fn heterostructure_headline() {
        let r = heterostructure_projection(&presets::easyaxis(), &[1, 10, 5000]).unwrap();
        assert!(rel(r.rows[0].eta, 7.452_067_580_806_567e-10) < 1e-9);
        assert!(rel(r.rows[1].eta / r.rows[0].eta, 100.0) < 0.01);
        assert!(rel(r.rows[2].eta, 0.011_385_561_446_288_183) < 1e-9);
    }

    #[test]
    fn dummy_delta_sweep_is_flat() {
        let s = presets::nocavity();
        let g = s.gamma_beta;
        let spec = SweepSpec {
            scenario: s,
            variable: SweepVariable::DummyDelta,
            range: SweepRange::new(1e-3 * g, 1e3 * g, 13, Scale::Log).unwrap(),
            lock: ResonanceLock::Full,
        };
        let etas = run_sweep(&spec).unwrap().etas();
        let max = etas.iter().cloned().fold(f64::MIN, f64::max);
        let min = etas.iter().cloned().fold(f64::MAX, f64::min);
        assert!(max / min - 1.0 < 1e-9);
    }

    #[test]
    fn sweeps_are_deterministic() {
        let a = faraday_sweep(&presets::easyaxis(), default_faraday_range()).unwrap();
        let b = faraday_sweep(&presets::easyaxis(), default_faraday_range()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn wrong_configuration_is_rejected() {
        assert!(faraday_sweep(&presets::nocavity(), default_faraday_range()).is_err());
        assert!(thickness_sweep_without_cavity(&presets::easyaxis(), default_thickness_range()).is_err());
    }

    #[test]
    fn fwhm_of_triangle() {
        let x: Vec<f64> = (0..=4).map(f64::from).collect();
        let y = [0.0, 1.0, 2.0, 1.0, 0.0];
        assert!((full_width_half_max(&x, &y).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(full_width_half_max(&x, &[1.0, 1.0, 2.0, 1.0, 1.0]), None);
    }
}
