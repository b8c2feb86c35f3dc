//! Shared draws of physical mode systems from unit-interval samples.
#![allow(dead_code)]

use afm_transducer::scattering::{MagnonBranch, MicrowavePort, ModeSystem, OpticalPort};
use afm_transducer::units::angular;

/// Number of unit samples consumed by [`system_from_unit`].
pub const DRAW_LEN: usize = 16;

fn log_between(u: f64, lo: f64, hi: f64) -> f64 {
    (lo.ln() + u * (hi.ln() - lo.ln())).exp()
}

fn between(u: f64, lo: f64, hi: f64) -> f64 {
    lo + u * (hi - lo)
}

/// Maps 16 numbers in [0, 1) to a physical system. Magnon frequencies span
/// 1-300 GHz; the microwave and optical cavities sit within 50 MHz of the
/// beta branch; all rates are log-uniform over several decades. Without a
/// cavity, `xi <= gamma`.
pub fn system_from_unit(u: &[f64; DRAW_LEN], cavity: bool) -> ModeSystem {
    let w_b = angular(log_between(u[0], 1e9, 300e9));
    let w_a = angular(log_between(u[1], 1e9, 300e9));
    let mhz = |x: f64| angular(x * 1e6);
    let microwave = MicrowavePort {
        omega_e: w_b + mhz(between(u[2], -50.0, 50.0)),
        kappa_ee: mhz(log_between(u[3], 1.0, 1000.0)),
        kappa_ei: mhz(log_between(u[4], 1.0, 1000.0)),
    };
    let gamma = [mhz(log_between(u[5], 0.1, 1000.0)), mhz(log_between(u[6], 0.1, 1000.0))];
    let magnons = [
        MagnonBranch { omega: w_a, gamma: gamma[0], g: mhz(log_between(u[7], 1e-3, 100.0)) },
        MagnonBranch { omega: w_b, gamma: gamma[1], g: mhz(log_between(u[8], 1e-3, 100.0)) },
    ];
    let optical = if cavity {
        OpticalPort::Cavity {
            delta_omega_o: -w_b + mhz(between(u[9], -50.0, 50.0)),
            kappa_oe: mhz(log_between(u[10], 1.0, 1000.0)),
            kappa_oi: mhz(log_between(u[11], 1.0, 1000.0)),
            zeta: [mhz(log_between(u[12], 1e-3, 10.0)), mhz(log_between(u[13], 1e-3, 10.0))],
        }
    } else {
        OpticalPort::Itinerant {
            xi: [gamma[0] * log_between(u[12], 1e-15, 1.0), gamma[1] * log_between(u[13], 1e-15, 1.0)],
            dummy_delta: gamma[1] * log_between(u[14], 1e-3, 1e3),
        }
    };
    ModeSystem { microwave, magnons, optical }
}

/// Eleven probe frequencies across the beta resonance, five linewidths either side.
pub fn probe_grid(sys: &ModeSystem) -> Vec<f64> {
    let w = sys.magnons[1].omega;
    let width = sys.microwave.kappa().max(sys.magnons[1].gamma);
    (0..11).map(|k| w + (k as f64 - 5.0) * width).collect()
}

/// Same system with every internal loss channel removed.
pub fn lossless(sys: &ModeSystem) -> ModeSystem {
    let mut s = *sys;
    s.microwave.kappa_ei = 0.0;
    for m in &mut s.magnons {
        m.gamma = 0.0;
    }
    if let OpticalPort::Cavity { kappa_oi, .. } = &mut s.optical {
        *kappa_oi = 0.0;
    }
    s
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}
