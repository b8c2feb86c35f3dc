//! Invariant suite run by the `validate` command on a resolved scenario.

use serde::{Deserialize, Serialize};

use crate::analytic::{self, cooperativity_form};
use crate::couplings::{microwave_coupling, Verdict, THIN_SAMPLE_LIMIT};
use crate::error::Result;
use crate::magnon::{
    bogoliubov_uv, diagonalize_numeric, kappa_coefficients, resonance_frequencies, HpOrder, QuadraticHamiltonian,
};
use crate::scattering::{self, OpticalPort};
use crate::scenario::{ActiveModes, ResonanceLock, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Warn,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Measured deviation (relative unless noted in `detail`).
    pub deviation: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub preset: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }
}

fn check(name: &str, deviation: f64, tolerance: f64, detail: impl Into<String>) -> Check {
    let status = if deviation <= tolerance { Status::Pass } else { Status::Fail };
    Check { name: name.into(), status, deviation, tolerance, detail: detail.into() }
}

fn skipped(name: &str, detail: impl Into<String>) -> Check {
    Check { name: name.into(), status: Status::Skipped, deviation: 0.0, tolerance: 0.0, detail: detail.into() }
}

fn failed(name: &str, detail: impl Into<String>) -> Check {
    Check { name: name.into(), status: Status::Fail, deviation: f64::INFINITY, tolerance: 0.0, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

fn magnon_checks(s: &Scenario, out: &mut Vec<Check>) {
    let m = &s.material;
    if m.omega_hard != 0.0 {
        for name in ["bogoliubov_normalization", "kappa_sum", "kappa_difference", "zeeman_splitting", "g_equality"] {
            out.push(skipped(name, "closed form needs omega_perp = 0"));
        }
    } else {
        match bogoliubov_uv(m) {
            Ok((u, v)) => {
                out.push(check("bogoliubov_normalization", (u * u - v * v - 1.0).abs(), 1e-12, "|U^2 - V^2 - 1|"))
            }
            Err(e) => out.push(failed("bogoliubov_normalization", e.to_string())),
        }
        match kappa_coefficients(m) {
            Ok(k) => {
                let x = m.omega_easy / (2.0 * m.omega_exchange);
                out.push(check("kappa_sum", rel(k.alpha + k.beta, 2.0 * x.powf(0.25)), 1e-12, ""));
                let diff = 2.0 * m.asymmetry * x.powf(-0.25);
                let dev = if diff == 0.0 { (k.alpha - k.beta).abs() } else { rel(k.alpha - k.beta, diff) };
                out.push(check("kappa_difference", dev, 1e-12, ""));
            }
            Err(e) => out.push(failed("kappa_sum", e.to_string())),
        }
        match resonance_frequencies(m, s.field) {
            Ok((a, b)) => {
                let split = 2.0 * m.gyro * s.field;
                // Floor at a few ulps of the branch magnitude for tiny fields.
                let floor = 4.0 * f64::EPSILON * a;
                let dev = ((a - b) - split).abs() / split.max(floor);
                out.push(check("zeeman_splitting", dev, 1e-12, "|(w_a - w_b) - 2 gamma B0| / 2 gamma B0"));
            }
            Err(e) => out.push(failed("zeeman_splitting", e.to_string())),
        }
        match microwave_coupling(m, &s.geometry, &s.cavity) {
            Ok((ga, gb)) => out.push(check("g_equality", rel(ga, gb), 0.0, "")),
            Err(e) => out.push(failed("g_equality", e.to_string())),
        }
    }

    if m.omega_hard != 0.0 && s.field != 0.0 {
        out.push(skipped(
            "numeric_frequencies",
            "leading-order formula and quadratic form differ when omega_perp and B0 are both nonzero",
        ));
        return;
    }
    let numeric = QuadraticHamiltonian::holstein_primakoff(m, s.field, HpOrder::LeadingExchange)
        .and_then(|h| diagonalize_numeric(&h));
    match (numeric, resonance_frequencies(m, s.field)) {
        (Ok(n), Ok((a, b))) => {
            let dev = rel(n.frequencies[0], a).max(rel(n.frequencies[1], b));
            out.push(check("numeric_frequencies", dev, 1e-9, "numeric Bogoliubov vs closed form"));
            out.push(check("metric_preservation", n.metric_defect(), 1e-9, "max |T^dag sigma T - sigma|"));
        }
        (Err(e), _) | (_, Err(e)) => out.push(failed("numeric_frequencies", e.to_string())),
    }
}

fn scattering_checks(s: &Scenario, out: &mut Vec<Check>) -> Result<()> {
    let e = s.evaluate()?;
    let smat = &e.result.s;
    let scale = smat.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let asym = (smat - smat.transpose()).iter().map(|z| z.norm()).fold(0.0, f64::max) / scale;
    out.push(check("reciprocity", asym, 1e-12, "max |S - S^T|"));
    let excess = (e.result.eta - 1.0).max(e.result.reflection - 1.0).max(0.0);
    out.push(check("passivity", excess, 1e-12, "max(eta, reflection) - 1"));
    let dev = if e.closed_form_eta == 0.0 { e.result.eta } else { rel(e.result.eta, e.closed_form_eta) };
    out.push(check("oracle_equivalence", dev, 1e-9, "matrix solver vs closed form"));

    let single = s.active != ActiveModes::Both;
    if single && s.lock == ResonanceLock::Full && s.probe_offset == 0.0 {
        let mode = s.active.lock_mode();
        let closed = match e.system.optical {
            OpticalPort::Cavity { .. } => analytic::eta_with_cavity_single(&e.system, mode, e.probe)?,
            OpticalPort::Itinerant { .. } => analytic::eta_without_cavity_single(&e.system, mode, e.probe)?,
        };
        let coop = cooperativity_form(&e.cooperativities, &e.system, mode);
        let dev = if coop == 0.0 { closed } else { rel(closed, coop) };
        out.push(check("cooperativity_form", dev, 1e-12, "single-mode closed form vs cooperativity form at resonance"));
    } else {
        out.push(skipped("cooperativity_form", "needs a single active mode at exact resonance"));
    }

    if let OpticalPort::Itinerant { xi, .. } = e.system.optical {
        let etas = [1e-3, 1.0, 1e3]
            .iter()
            .map(|f| {
                let mut sys = e.system;
                sys.optical = OpticalPort::Itinerant { xi, dummy_delta: f * s.gamma_beta };
                scattering::solve(&sys, e.probe).map(|r| r.eta)
            })
            .collect::<Result<Vec<_>>>()?;
        let max = etas.iter().cloned().fold(f64::MIN, f64::max);
        let min = etas.iter().cloned().fold(f64::MAX, f64::min);
        let dev = if min == 0.0 { max } else { max / min - 1.0 };
        out.push(check("dummy_delta_independence", dev, 1e-10, "eta over dummy_delta in [1e-3, 1e3] gamma_beta"));
        let status = if e.thin_sample.verdict == Verdict::Pass { Status::Pass } else { Status::Warn };
        out.push(Check {
            name: "thin_sample".into(),
            status,
            deviation: e.thin_sample.ratio,
            tolerance: THIN_SAMPLE_LIMIT,
            detail: "tau * omega (advisory)".into(),
        });
    }
    Ok(())
}

pub fn run_invariants(s: &Scenario) -> ValidationReport {
    let mut checks = Vec::new();
    magnon_checks(s, &mut checks);
    if let Err(e) = scattering_checks(s, &mut checks) {
        checks.push(failed("scattering", e.to_string()));
    }
    ValidationReport { preset: s.name.clone(), checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn presets_validate() {
        for name in presets::NAMES {
            let r = run_invariants(&presets::by_name(name).unwrap());
            assert!(!r.failed(), "{name}: {:#?}", r.checks);
        }
    }

    #[test]
    fn hard_axis_skips_closed_forms() {
        let mut s = presets::easyaxis();
        s.material.omega_hard = 1e10;
        let r = run_invariants(&s);
        assert!(r.checks.iter().any(|c| c.name == "bogoliubov_normalization" && c.status == Status::Skipped));
    }

    #[test]
    fn beyond_spin_flop_fails() {
        let mut s = presets::easyaxis();
        s.field = 100.0;
        assert!(run_invariants(&s).failed());
    }
}
