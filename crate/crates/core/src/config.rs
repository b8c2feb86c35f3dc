//! TOML run configuration: a preset plus per-field overrides with units.
//!
//! ```toml
//! preset = "mnf2-easyaxis-20GHz"
//!
//! [params]
//! gamma_beta = "100 MHz"
//! thickness = "1 um"
//!
//! [sweep]
//! variable = "faraday-angle"
//! lo = 0.01
//! hi = 1.0
//! count = 21
//! scale = "log"
//!
//! [output]
//! format = "csv"
//! ```
//!
//! Frequencies are ordinary frequencies (Hz); bare numbers are read in the
//! base unit of the field (Hz, m, m^2, W, T, rad/m, 1/m^3).

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::couplings::OpticalBackend;
use crate::experiments::{Scale, SweepRange, SweepVariable};
use crate::presets;
use crate::scattering::Configuration;
use crate::scenario::{ActiveModes, CouplingBackend, ResonanceLock, Scenario, XiBackend};
use crate::units::angular;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigErrorKind {
    UnknownKey,
    UnitViolation,
    MissingField,
    InvalidValue,
    Malformed,
}

impl ConfigErrorKind {
    pub fn tag(self) -> &'static str {
        match self {
            ConfigErrorKind::UnknownKey => "unknown_key",
            ConfigErrorKind::UnitViolation => "unit_violation",
            ConfigErrorKind::MissingField => "missing_field",
            ConfigErrorKind::InvalidValue => "invalid_value",
            ConfigErrorKind::Malformed => "malformed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub struct ConfigError {
    pub kind: ConfigErrorKind,
    /// 1-based line in the config file, when the error has a location there.
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "{} (line {line}): {}", self.kind.tag(), self.message),
            None => write!(f, "{}: {}", self.kind.tag(), self.message),
        }
    }
}

impl ConfigError {
    pub fn new(kind: ConfigErrorKind, line: Option<usize>, message: impl Into<String>) -> Self {
        ConfigError { kind, line, message: message.into() }
    }
}

type CResult<T> = std::result::Result<T, ConfigError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Modes,
    Couplings,
    Efficiency,
    Sweep,
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Where a resolved field came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Preset,
    File,
    Cli,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub variable: SweepVariable,
    /// Internal units.
    pub range: SweepRange,
    pub lock: ResonanceLock,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub preset: String,
    pub command: Option<Command>,
    pub scenario: Scenario,
    pub sweep: Option<SweepConfig>,
    pub output: OutputConfig,
    /// Origin of every parameter key.
    pub provenance: BTreeMap<&'static str, Source>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    preset: Option<Spanned<String>>,
    command: Option<Spanned<String>>,
    #[serde(default)]
    params: BTreeMap<Spanned<String>, Spanned<toml::Value>>,
    sweep: Option<RawSweep>,
    output: Option<RawOutput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    variable: Spanned<String>,
    lo: Spanned<toml::Value>,
    hi: Spanned<toml::Value>,
    count: Option<Spanned<i64>>,
    scale: Option<Spanned<String>>,
    lock: Option<Spanned<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    path: Option<String>,
    format: Option<Spanned<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quantity {
    Frequency,
    /// Frequency that may be negative.
    SignedFrequency,
    Length,
    Area,
    Power,
    Field,
    Rotation,
    Density,
    Gyro,
    RootHz,
    Number,
    SignedNumber,
    Count,
    Word,
}

/// Every accepted parameter key and how its value is read.
pub const PARAMS: &[&str] = &[
    "omega_exchange",
    "omega_easy",
    "omega_hard",
    "gyro",
    "spin_density",
    "asymmetry",
    "theta_f",
    "eps_r",
    "cross_section",
    "thickness",
    "layer_count",
    "omega_e",
    "kappa_ee",
    "kappa_ei",
    "delta_omega_o",
    "kappa_oe",
    "kappa_oi",
    "n_cav",
    "g0_slope",
    "overlap",
    "power",
    "omega_drive",
    "field",
    "omega_alpha",
    "omega_beta",
    "kappa_alpha",
    "kappa_beta",
    "gamma_alpha",
    "gamma_beta",
    "g",
    "dummy_delta",
    "probe_offset",
    "configuration",
    "active",
    "coupling_backend",
    "optical_backend",
    "xi_backend",
    "lock",
];

fn quantity(key: &str) -> Option<Quantity> {
    use Quantity::*;
    Some(match key {
        "omega_exchange" | "omega_easy" | "omega_hard" | "omega_e" | "kappa_ee" | "kappa_ei" | "kappa_oe"
        | "kappa_oi" | "omega_drive" | "omega_alpha" | "omega_beta" | "gamma_alpha" | "gamma_beta" | "g" => Frequency,
        "delta_omega_o" | "probe_offset" | "dummy_delta" => SignedFrequency,
        "thickness" => Length,
        "cross_section" => Area,
        "power" => Power,
        "field" => Field,
        "theta_f" => Rotation,
        "spin_density" => Density,
        "gyro" => Gyro,
        "g0_slope" => RootHz,
        "eps_r" | "n_cav" | "overlap" | "kappa_alpha" | "kappa_beta" => Number,
        "asymmetry" => SignedNumber,
        "layer_count" => Count,
        "configuration" | "active" | "coupling_backend" | "optical_backend" | "xi_backend" | "lock" => Word,
        _ => return None,
    })
}

fn units(q: Quantity) -> &'static [(&'static str, f64)] {
    use std::f64::consts::PI;
    use Quantity::*;
    match q {
        Frequency | SignedFrequency => &[("Hz", 1.0), ("kHz", 1e3), ("MHz", 1e6), ("GHz", 1e9), ("THz", 1e12)],
        Length => &[("m", 1.0), ("cm", 1e-2), ("mm", 1e-3), ("um", 1e-6), ("μm", 1e-6), ("nm", 1e-9)],
        Area => &[("m^2", 1.0), ("cm^2", 1e-4), ("mm^2", 1e-6), ("um^2", 1e-12)],
        Power => &[("W", 1.0), ("mW", 1e-3), ("uW", 1e-6)],
        Field => &[("T", 1.0), ("mT", 1e-3)],
        Rotation => &[("rad/m", 1.0), ("rad/mm", 1e3), ("deg/m", PI / 180.0), ("deg/mm", PI / 180.0 * 1e3)],
        Density => &[("/m^3", 1.0), ("/cm^3", 1e6), ("/mm^3", 1e9)],
        Gyro => &[("rad/s/T", 1.0), ("Hz/T", 2.0 * PI), ("GHz/T", 2.0 * PI * 1e9)],
        RootHz => &[("sqrt(Hz)", 1.0)],
        Number | SignedNumber | Count | Word => &[],
    }
}

fn split_number(s: &str) -> (&str, &str) {
    let s = s.trim();
    let end = s
        .char_indices()
        .find(|&(i, c)| {
            !(c.is_ascii_digit()
                || c == '.'
                || ((c == '-' || c == '+') && (i == 0 || matches!(s.as_bytes()[i - 1], b'e' | b'E')))
                || ((c == 'e' || c == 'E')
                    && i > 0
                    && s[i + 1..].starts_with(|n: char| n.is_ascii_digit() || n == '-' || n == '+')))
        })
        .map(|(i, _)| i)
        .unwrap_or(s.len());
    (&s[..end], s[end..].trim())
}

/// Parses a scalar in the field's base unit (before any Hz -> rad/s conversion).
fn parse_scalar(key: &str, q: Quantity, v: &toml::Value) -> std::result::Result<f64, (ConfigErrorKind, String)> {
    let unit_err = |m: String| (ConfigErrorKind::UnitViolation, format!("`{key}`: {m}"));
    let (number, factor) = match v {
        toml::Value::Integer(i) => (*i as f64, 1.0),
        toml::Value::Float(f) => (*f, 1.0),
        toml::Value::String(s) => {
            let (num, unit) = split_number(s);
            let n: f64 = num.parse().map_err(|_| unit_err(format!("cannot read a number from {s:?}")))?;
            if unit.is_empty() {
                (n, 1.0)
            } else {
                let table = units(q);
                let f = table.iter().find(|(u, _)| *u == unit).map(|(_, f)| *f).ok_or_else(|| {
                    let known: Vec<&str> = table.iter().map(|(u, _)| *u).collect();
                    if known.is_empty() {
                        unit_err(format!("is dimensionless, got unit {unit:?}"))
                    } else {
                        unit_err(format!("unknown unit {unit:?}; expected one of {}", known.join(", ")))
                    }
                })?;
                (n, f)
            }
        }
        other => return Err(unit_err(format!("expected a number or quantity string, got {}", other.type_str()))),
    };
    let value = number * factor;
    if !value.is_finite() {
        return Err(unit_err(format!("value must be finite, got {value}")));
    }
    let signed = matches!(q, Quantity::SignedFrequency | Quantity::SignedNumber);
    if !signed && value < 0.0 {
        return Err(unit_err(format!("must be non-negative, got {v}")));
    }
    if q == Quantity::Count && (value.fract() != 0.0 || value < 1.0) {
        return Err(unit_err(format!("must be a positive integer, got {v}")));
    }
    Ok(value)
}

fn parse_word<T: for<'de> Deserialize<'de>>(
    key: &str,
    v: &toml::Value,
) -> std::result::Result<T, (ConfigErrorKind, String)> {
    let s = v.as_str().ok_or_else(|| (ConfigErrorKind::InvalidValue, format!("`{key}` expects a string")))?;
    T::deserialize(serde::de::value::StrDeserializer::<serde::de::value::Error>::new(s))
        .map_err(|e| (ConfigErrorKind::InvalidValue, format!("`{key}`: {e}")))
}

/// Applies one parameter override. `key` must be in [`PARAMS`].
fn apply_param(s: &mut Scenario, key: &str, v: &toml::Value) -> std::result::Result<(), (ConfigErrorKind, String)> {
    let q = quantity(key).ok_or_else(|| (ConfigErrorKind::UnknownKey, format!("unknown parameter `{key}`")))?;
    if q == Quantity::Word {
        match key {
            "configuration" => s.configuration = parse_word(key, v)?,
            "active" => s.active = parse_word::<ActiveModes>(key, v)?,
            "coupling_backend" => s.coupling_backend = parse_word::<CouplingBackend>(key, v)?,
            "optical_backend" => s.optical_backend = parse_word::<OpticalBackend>(key, v)?,
            "xi_backend" => s.xi_backend = parse_word::<XiBackend>(key, v)?,
            "lock" => s.lock = parse_word::<ResonanceLock>(key, v)?,
            _ => unreachable!(),
        }
        return Ok(());
    }
    let x = parse_scalar(key, q, v)?;
    let w = angular(x);
    match key {
        "omega_exchange" => s.material.omega_exchange = w,
        "omega_easy" => s.material.omega_easy = w,
        "omega_hard" => s.material.omega_hard = w,
        "gyro" => s.material.gyro = x,
        "spin_density" => s.material.spin_density = x,
        "asymmetry" => s.material.asymmetry = x,
        "theta_f" => s.material.theta_f = x,
        "eps_r" => s.material.eps_r = x,
        "cross_section" => s.geometry.cross_section = x,
        "thickness" => s.geometry.thickness = x,
        "layer_count" => s.geometry.layer_count = x as u32,
        "omega_e" => s.cavity.omega_e = w,
        "kappa_ee" => s.cavity.kappa_ee = w,
        "kappa_ei" => s.cavity.kappa_ei = w,
        "delta_omega_o" => s.cavity.delta_omega_o = w,
        "kappa_oe" => s.cavity.kappa_oe = w,
        "kappa_oi" => s.cavity.kappa_oi = w,
        "n_cav" => s.cavity.n_cav = x,
        "g0_slope" => s.cavity.g0_slope = x,
        "overlap" => s.cavity.overlap = x,
        "power" => s.drive.power = x,
        "omega_drive" => s.drive.omega_drive = w,
        "field" => s.field = x,
        "omega_alpha" => s.omega_alpha = Some(w),
        "omega_beta" => s.omega_beta = Some(w),
        "kappa_alpha" | "kappa_beta" => {
            // Overriding one coefficient keeps the other at its current value.
            let mut k = match s.kappa_override {
                Some(k) => k,
                None => crate::magnon::kappa_coefficients(&s.material)
                    .map_err(|e| (ConfigErrorKind::InvalidValue, format!("`{key}`: {e}")))?,
            };
            if key == "kappa_alpha" {
                k.alpha = x;
            } else {
                k.beta = x;
            }
            s.kappa_override = Some(k);
        }
        "gamma_alpha" => s.gamma_alpha = w,
        "gamma_beta" => s.gamma_beta = w,
        "g" => s.g_override = Some(w),
        "dummy_delta" => s.dummy_delta = Some(w),
        "probe_offset" => s.probe_offset = w,
        _ => unreachable!("{key}"),
    }
    Ok(())
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

fn sweep_value(
    variable: SweepVariable,
    key: &str,
    v: &toml::Value,
) -> std::result::Result<f64, (ConfigErrorKind, String)> {
    let q = match variable {
        SweepVariable::Thickness => Quantity::Length,
        SweepVariable::ProbeDetuning | SweepVariable::DummyDelta => Quantity::SignedFrequency,
        SweepVariable::FaradayAngle => Quantity::Number,
        SweepVariable::LayerCount => Quantity::Count,
    };
    Ok(variable.internal(parse_scalar(key, q, v)?))
}

/// Parses and resolves a configuration document, then applies `--set` overrides.
pub fn load_config(text: &str, overrides: &[String]) -> CResult<RunConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let line = e.span().map(|s| line_of(text, s.start));
        let msg = e.message().to_string();
        let kind = if msg.contains("unknown field") {
            ConfigErrorKind::UnknownKey
        } else if msg.contains("missing field") {
            ConfigErrorKind::MissingField
        } else {
            ConfigErrorKind::Malformed
        };
        ConfigError::new(kind, line, msg)
    })?;

    let cli: Vec<(String, String)> = overrides
        .iter()
        .map(|o| {
            o.split_once('=').map(|(k, v)| (k.trim().to_string(), v.trim().to_string())).ok_or_else(|| {
                ConfigError::new(ConfigErrorKind::Malformed, None, format!("--set expects key=value, got {o:?}"))
            })
        })
        .collect::<CResult<_>>()?;

    let preset_cli = cli.iter().rev().find(|(k, _)| k == "preset").map(|(_, v)| v.clone());
    let (preset, preset_line) = match (&preset_cli, &raw.preset) {
        (Some(p), _) => (p.clone(), None),
        (None, Some(p)) => (p.get_ref().clone(), Some(line_of(text, p.span().start))),
        (None, None) => {
            return Err(ConfigError::new(ConfigErrorKind::MissingField, None, "missing field `preset`"));
        }
    };
    let mut scenario = presets::by_name(&preset)
        .map_err(|e| ConfigError::new(ConfigErrorKind::InvalidValue, preset_line, e.to_string()))?;

    let mut provenance: BTreeMap<&'static str, Source> = PARAMS.iter().map(|&k| (k, Source::Preset)).collect();
    let mut lines: BTreeMap<&'static str, usize> = BTreeMap::new();

    for (key, value) in &raw.params {
        let line = line_of(text, key.span().start);
        let name = key.get_ref().as_str();
        let canonical = PARAMS.iter().find(|&&p| p == name).ok_or_else(|| {
            ConfigError::new(ConfigErrorKind::UnknownKey, Some(line), format!("unknown parameter `{name}`"))
        })?;
        apply_param(&mut scenario, canonical, value.get_ref()).map_err(|(k, m)| ConfigError::new(k, Some(line), m))?;
        provenance.insert(canonical, Source::File);
        lines.insert(canonical, line);
    }

    for (key, value) in &cli {
        if key == "preset" {
            continue;
        }
        let name = key.strip_prefix("params.").unwrap_or(key);
        let canonical = PARAMS.iter().find(|&&p| p == name).ok_or_else(|| {
            ConfigError::new(ConfigErrorKind::UnknownKey, None, format!("unknown parameter `{key}` in --set"))
        })?;
        let parsed =
            value.parse::<f64>().map(toml::Value::Float).unwrap_or_else(|_| toml::Value::String(value.clone()));
        apply_param(&mut scenario, canonical, &parsed).map_err(|(k, m)| ConfigError::new(k, None, m))?;
        provenance.insert(canonical, Source::Cli);
        lines.remove(canonical);
    }

    if let Err(e) = scenario.validate() {
        let line = match &e {
            crate::Error::InvalidParameter { name, .. } => {
                lines.iter().find(|(k, _)| k.contains(name) || name.contains(*k)).map(|(_, &l)| l)
            }
            _ => None,
        };
        return Err(ConfigError::new(ConfigErrorKind::InvalidValue, line, e.to_string()));
    }

    let command = raw
        .command
        .as_ref()
        .map(|c| {
            parse_word::<Command>("command", &toml::Value::String(c.get_ref().clone()))
                .map_err(|(k, m)| ConfigError::new(k, Some(line_of(text, c.span().start)), m))
        })
        .transpose()?;

    let sweep = raw.sweep.as_ref().map(|s| parse_sweep(text, s, &scenario)).transpose()?;

    let mut output = OutputConfig::default();
    if let Some(o) = &raw.output {
        output.path = o.path.as_ref().map(PathBuf::from);
        output.format = o
            .format
            .as_ref()
            .map(|f| {
                parse_word::<Format>("format", &toml::Value::String(f.get_ref().clone()))
                    .map_err(|(k, m)| ConfigError::new(k, Some(line_of(text, f.span().start)), m))
            })
            .transpose()?;
    }

    Ok(RunConfig { preset, command, scenario, sweep, output, provenance })
}

fn parse_sweep(text: &str, s: &RawSweep, scenario: &Scenario) -> CResult<SweepConfig> {
    let at = |span: std::ops::Range<usize>| Some(line_of(text, span.start));
    let variable: SweepVariable = parse_word("variable", &toml::Value::String(s.variable.get_ref().clone()))
        .map_err(|(k, m)| ConfigError::new(k, at(s.variable.span()), m))?;
    let lo = sweep_value(variable, "lo", s.lo.get_ref()).map_err(|(k, m)| ConfigError::new(k, at(s.lo.span()), m))?;
    let hi = sweep_value(variable, "hi", s.hi.get_ref()).map_err(|(k, m)| ConfigError::new(k, at(s.hi.span()), m))?;
    let count = match &s.count {
        Some(c) if *c.get_ref() < 2 => {
            return Err(ConfigError::new(ConfigErrorKind::InvalidValue, at(c.span()), "`count` must be >= 2"));
        }
        Some(c) => *c.get_ref() as usize,
        None => 21,
    };
    let scale = match &s.scale {
        Some(sc) => parse_word::<Scale>("scale", &toml::Value::String(sc.get_ref().clone()))
            .map_err(|(k, m)| ConfigError::new(k, at(sc.span()), m))?,
        None => Scale::Log,
    };
    let lock = match &s.lock {
        Some(l) => parse_word::<ResonanceLock>("lock", &toml::Value::String(l.get_ref().clone()))
            .map_err(|(k, m)| ConfigError::new(k, at(l.span()), m))?,
        None => scenario.lock,
    };
    let range = SweepRange::new(lo, hi, count, scale)
        .map_err(|e| ConfigError::new(ConfigErrorKind::InvalidValue, at(s.variable.span()), e.to_string()))?;
    Ok(SweepConfig { variable, range, lock })
}

/// Default sweep when the config has no `[sweep]` table.
pub fn default_sweep(scenario: &Scenario) -> SweepConfig {
    match scenario.configuration {
        Configuration::WithOpticalCavity => SweepConfig {
            variable: SweepVariable::FaradayAngle,
            range: crate::experiments::default_faraday_range(),
            lock: ResonanceLock::Full,
        },
        Configuration::WithoutOpticalCavity => SweepConfig {
            variable: SweepVariable::Thickness,
            range: crate::experiments::default_thickness_range(),
            lock: ResonanceLock::Full,
        },
    }
}
