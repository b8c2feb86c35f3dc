//! Command-line front end.

use std::path::PathBuf;

use clap::Parser;
use serde::Serialize;

use crate::config::{default_sweep, load_config, Command, ConfigError, ConfigErrorKind, Format, RunConfig};
use crate::couplings::{itinerant_xi, optical_coupling, Verdict};
use crate::emit::{csv_bytes, emit_sweep, json_bytes, write_output, Cell, Table};
use crate::error::{Error, Result};
use crate::experiments::{
    detuning_sweep, faraday_sweep, heterostructure_projection, run_sweep, thickness_sweep_with_cavity,
    thickness_sweep_without_cavity, SweepResult, SweepSpec, SweepVariable,
};
use crate::magnon::ModeCoefficients;
use crate::scattering::Configuration;
use crate::scenario::Scenario;
use crate::units::ordinary;
use crate::validate::{run_invariants, Status, ValidationReport};

/// Exit code for a failed invariant in `validate`.
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "afm-transducer",
    version,
    about = "Microwave-to-optical transduction through antiferromagnetic magnons"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// TOML run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Override one parameter, e.g. `--set gamma_beta="200 MHz"`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Output file; stdout if omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModesReport {
    pub preset: String,
    pub configuration: Configuration,
    pub field_t: f64,
    pub omega_alpha_hz: f64,
    pub omega_beta_hz: f64,
    pub u: f64,
    pub v: f64,
    pub kappa_alpha: f64,
    pub kappa_beta: f64,
    pub gamma_alpha_hz: f64,
    pub gamma_beta_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingsReport {
    pub preset: String,
    pub configuration: Configuration,
    pub g_alpha_hz: f64,
    pub g_beta_hz: f64,
    pub single_photon_alpha_hz: f64,
    pub single_photon_beta_hz: f64,
    pub zeta_alpha_hz: f64,
    pub zeta_beta_hz: f64,
    pub xi_alpha_hz: f64,
    pub xi_beta_hz: f64,
    /// `xi` from the drive-flux formula, whatever backend is active.
    pub xi_formula_alpha_hz: f64,
    pub xi_formula_beta_hz: f64,
    pub thin_sample_ratio: f64,
    pub thin_sample: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EfficiencyReport {
    pub preset: String,
    pub configuration: Configuration,
    pub probe_hz: f64,
    pub eta: f64,
    pub reflection: f64,
    pub eta_closed_form: f64,
    pub c_em_alpha: f64,
    pub c_em_beta: f64,
    pub c_om_alpha: f64,
    pub c_om_beta: f64,
    pub eta_e: f64,
    pub eta_o: f64,
    pub eta_m_alpha: f64,
    pub eta_m_beta: f64,
    pub condition: f64,
}

fn head(s: &Scenario) -> [Cell; 2] {
    [Cell::Text(s.name.clone()), Cell::Text(s.configuration.to_string())]
}

fn single_row(header: Vec<&'static str>, s: &Scenario, nums: Vec<Cell>) -> Table {
    let mut row: Vec<Cell> = head(s).into();
    row.extend(nums);
    Table { header, rows: vec![row] }
}

fn modes_report(s: &Scenario) -> Result<ModesReport> {
    let m = s.magnon_modes()?;
    Ok(ModesReport {
        preset: s.name.clone(),
        configuration: s.configuration,
        field_t: s.field,
        omega_alpha_hz: ordinary(m.omega_alpha),
        omega_beta_hz: ordinary(m.omega_beta),
        u: m.u,
        v: m.v,
        kappa_alpha: m.kappa_alpha,
        kappa_beta: m.kappa_beta,
        gamma_alpha_hz: ordinary(m.gamma_alpha),
        gamma_beta_hz: ordinary(m.gamma_beta),
    })
}

fn couplings_report(s: &Scenario) -> Result<CouplingsReport> {
    let modes = s.magnon_modes()?;
    let c = s.couplings(&modes)?;
    let kappas = ModeCoefficients { alpha: modes.kappa_alpha, beta: modes.kappa_beta };
    let (ga, gb) = optical_coupling(&s.material, &s.geometry, &kappas, s.optical_backend)?;
    let active = |mode: usize, x: f64| if s.active.includes(mode) { x } else { 0.0 };
    let thin = s.thin_sample(&modes);
    Ok(CouplingsReport {
        preset: s.name.clone(),
        configuration: s.configuration,
        g_alpha_hz: ordinary(c.alpha.microwave),
        g_beta_hz: ordinary(c.beta.microwave),
        single_photon_alpha_hz: ordinary(c.alpha.single_photon),
        single_photon_beta_hz: ordinary(c.beta.single_photon),
        zeta_alpha_hz: ordinary(c.alpha.cavity_enhanced),
        zeta_beta_hz: ordinary(c.beta.cavity_enhanced),
        xi_alpha_hz: ordinary(c.alpha.itinerant),
        xi_beta_hz: ordinary(c.beta.itinerant),
        xi_formula_alpha_hz: ordinary(active(0, itinerant_xi(ga, &s.geometry, &s.drive)?)),
        xi_formula_beta_hz: ordinary(active(1, itinerant_xi(gb, &s.geometry, &s.drive)?)),
        thin_sample_ratio: thin.ratio,
        thin_sample: thin.verdict,
    })
}

fn efficiency_report(s: &Scenario) -> Result<EfficiencyReport> {
    let e = s.evaluate()?;
    let c = &e.cooperativities;
    Ok(EfficiencyReport {
        preset: s.name.clone(),
        configuration: s.configuration,
        probe_hz: ordinary(e.probe),
        eta: e.result.eta,
        reflection: e.result.reflection,
        eta_closed_form: e.closed_form_eta,
        c_em_alpha: c.c_em_alpha,
        c_em_beta: c.c_em_beta,
        c_om_alpha: c.c_om_alpha,
        c_om_beta: c.c_om_beta,
        eta_e: c.eta_e,
        eta_o: c.eta_o,
        eta_m_alpha: c.eta_m_alpha,
        eta_m_beta: c.eta_m_beta,
        condition: e.result.condition,
    })
}

fn modes_table(s: &Scenario, r: &ModesReport) -> Table {
    let header = vec![
        "preset",
        "configuration",
        "field_t",
        "omega_alpha_hz",
        "omega_beta_hz",
        "u",
        "v",
        "kappa_alpha",
        "kappa_beta",
        "gamma_alpha_hz",
        "gamma_beta_hz",
    ];
    let nums = [
        r.field_t,
        r.omega_alpha_hz,
        r.omega_beta_hz,
        r.u,
        r.v,
        r.kappa_alpha,
        r.kappa_beta,
        r.gamma_alpha_hz,
        r.gamma_beta_hz,
    ];
    single_row(header, s, nums.into_iter().map(Cell::Num).collect())
}

fn couplings_table(s: &Scenario, r: &CouplingsReport) -> Table {
    let header = vec![
        "preset",
        "configuration",
        "g_alpha_hz",
        "g_beta_hz",
        "single_photon_alpha_hz",
        "single_photon_beta_hz",
        "zeta_alpha_hz",
        "zeta_beta_hz",
        "xi_alpha_hz",
        "xi_beta_hz",
        "xi_formula_alpha_hz",
        "xi_formula_beta_hz",
        "thin_sample_ratio",
        "thin_sample",
    ];
    let nums = [
        r.g_alpha_hz,
        r.g_beta_hz,
        r.single_photon_alpha_hz,
        r.single_photon_beta_hz,
        r.zeta_alpha_hz,
        r.zeta_beta_hz,
        r.xi_alpha_hz,
        r.xi_beta_hz,
        r.xi_formula_alpha_hz,
        r.xi_formula_beta_hz,
        r.thin_sample_ratio,
    ];
    let mut cells: Vec<Cell> = nums.into_iter().map(Cell::Num).collect();
    let verdict = match r.thin_sample {
        Verdict::Pass => "pass",
        Verdict::Warn => "warn",
    };
    cells.push(Cell::Text(verdict.into()));
    single_row(header, s, cells)
}

fn efficiency_table(s: &Scenario, r: &EfficiencyReport) -> Table {
    let header = vec![
        "preset",
        "configuration",
        "probe_hz",
        "eta",
        "reflection",
        "eta_closed_form",
        "c_em_alpha",
        "c_em_beta",
        "c_om_alpha",
        "c_om_beta",
        "eta_e",
        "eta_o",
        "eta_m_alpha",
        "eta_m_beta",
        "condition",
    ];
    let nums = [
        r.probe_hz,
        r.eta,
        r.reflection,
        r.eta_closed_form,
        r.c_em_alpha,
        r.c_em_beta,
        r.c_om_alpha,
        r.c_om_beta,
        r.eta_e,
        r.eta_o,
        r.eta_m_alpha,
        r.eta_m_beta,
        r.condition,
    ];
    single_row(header, s, nums.into_iter().map(Cell::Num).collect())
}

fn validation_table(s: &Scenario, r: &ValidationReport) -> Table {
    let header = vec!["preset", "configuration", "check", "status", "deviation", "tolerance", "detail"];
    let rows = r
        .checks
        .iter()
        .map(|c| {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Warn => "warn",
                Status::Fail => "fail",
                Status::Skipped => "skipped",
            };
            let mut row: Vec<Cell> = head(s).into();
            row.extend([
                Cell::Text(c.name.clone()),
                Cell::Text(status.into()),
                Cell::Num(c.deviation),
                Cell::Num(c.tolerance),
                Cell::Text(c.detail.clone()),
            ]);
            row
        })
        .collect();
    Table { header, rows }
}

/// Runs the sweep named by the config, or the default sweep for the configuration.
pub fn sweep(cfg: &RunConfig) -> Result<SweepResult> {
    let s = &cfg.scenario;
    let sc = cfg.sweep.clone().unwrap_or_else(|| default_sweep(s));
    let scenario = Scenario { lock: sc.lock, ..s.clone() };
    match sc.variable {
        SweepVariable::FaradayAngle => faraday_sweep(&scenario, sc.range),
        SweepVariable::Thickness => match s.configuration {
            Configuration::WithOpticalCavity => thickness_sweep_with_cavity(&scenario, sc.range),
            Configuration::WithoutOpticalCavity => thickness_sweep_without_cavity(&scenario, sc.range),
        },
        SweepVariable::ProbeDetuning => detuning_sweep(&scenario, sc.range),
        SweepVariable::LayerCount => {
            sc.range.validate()?;
            let mut layers: Vec<u32> = sc.range.points().iter().map(|v| v.round() as u32).collect();
            layers.dedup();
            heterostructure_projection(&scenario, &layers)
        }
        SweepVariable::DummyDelta => {
            run_sweep(&SweepSpec { scenario, variable: sc.variable, range: sc.range, lock: sc.lock })
        }
    }
}

fn render<T: Serialize>(format: Format, table: impl FnOnce() -> Table, value: &T) -> Result<Vec<u8>> {
    match format {
        Format::Csv => csv_bytes(&table()),
        Format::Json => json_bytes(value),
    }
}

/// Runs one command and returns the bytes it would write plus the exit code.
pub fn execute(command: Command, cfg: &RunConfig, format: Format) -> Result<(Vec<u8>, i32)> {
    let s = &cfg.scenario;
    let out = match command {
        Command::Modes => {
            let r = modes_report(s)?;
            render(format, || modes_table(s, &r), &r)?
        }
        Command::Couplings => {
            let r = couplings_report(s)?;
            render(format, || couplings_table(s, &r), &r)?
        }
        Command::Efficiency => {
            let r = efficiency_report(s)?;
            render(format, || efficiency_table(s, &r), &r)?
        }
        Command::Sweep => emit_sweep(&sweep(cfg)?, format)?,
        Command::Validate => {
            let r = run_invariants(s);
            let bytes = render(format, || validation_table(s, &r), &r)?;
            let code = if r.failed() { EXIT_INVARIANT } else { 0 };
            return Ok((bytes, code));
        }
    };
    Ok((out, 0))
}

/// Full CLI run: read and resolve the config, execute, write. Returns the exit code.
pub fn run(cli: &Cli) -> Result<i32> {
    let text = std::fs::read_to_string(&cli.config)?;
    let cfg = load_config(&text, &cli.set)?;
    if let Some(c) = cfg.command {
        if c != cli.command {
            return Err(Error::Config(ConfigError::new(
                ConfigErrorKind::InvalidValue,
                None,
                format!("config is for `{c:?}` but the command line asked for `{:?}`", cli.command).to_lowercase(),
            )));
        }
    }
    let format = cli.format.or(cfg.output.format).unwrap_or_default();
    let path = cli.output.clone().or_else(|| cfg.output.path.clone());
    let (bytes, code) = execute(cli.command, &cfg, format)?;
    write_output(&bytes, path.as_deref())?;
    Ok(code)
}

/// JSON error object written to stderr on failure.
pub fn error_json(e: &Error) -> String {
    let line = match e {
        Error::Config(c) => c.line,
        _ => None,
    };
    let message = match e {
        Error::Config(c) => c.message.clone(),
        other => other.to_string(),
    };
    serde_json::json!({ "error": { "kind": e.kind(), "message": message, "line": line } }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> RunConfig {
        load_config(text, &[]).unwrap()
    }

    #[test]
    fn efficiency_csv_has_one_row() {
        let c = cfg("preset = \"mnf2-easyaxis-20GHz\"\n");
        let (bytes, code) = execute(Command::Efficiency, &c, Format::Csv).unwrap();
        assert_eq!(code, 0);
        let text = String::from_utf8(bytes).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.lines().nth(1).unwrap().starts_with("mnf2-easyaxis-20GHz,with-optical-cavity,"));
    }

    #[test]
    fn every_command_runs_on_every_preset() {
        for name in crate::presets::NAMES {
            let c = cfg(&format!("preset = \"{name}\"\n"));
            for cmd in [Command::Modes, Command::Couplings, Command::Efficiency, Command::Sweep, Command::Validate] {
                for f in [Format::Csv, Format::Json] {
                    let (_, code) = execute(cmd, &c, f).unwrap_or_else(|e| panic!("{name} {cmd:?}: {e}"));
                    assert_eq!(code, 0, "{name} {cmd:?}");
                }
            }
        }
    }

    #[test]
    fn error_object_carries_line() {
        let e = Error::Config(load_config("preset = \"mnf2-easyaxis-20GHz\"\n[params]\nbogus = 1\n", &[]).unwrap_err());
        let v: serde_json::Value = serde_json::from_str(&error_json(&e)).unwrap();
        assert_eq!(v["error"]["kind"], "unknown_key");
        assert_eq!(v["error"]["line"], 3);
    }
}
