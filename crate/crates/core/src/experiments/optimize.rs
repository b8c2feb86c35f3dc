//! Optimal thickness: coarse log grid, then golden-section search in log d.

use serde::{Deserialize, Serialize};

use super::{SweepRange, SweepVariable};
use crate::error::{Error, Result};
use crate::scattering::Configuration;
use crate::scenario::{CouplingBackend, ResonanceLock, Scenario};

pub const GRID_POINTS: usize = 64;
/// Relative tolerance on the located thickness.
pub const DEFAULT_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalThickness {
    /// Thickness (m).
    pub d_star: f64,
    pub eta_star: f64,
    pub c_em: f64,
    pub c_om: f64,
}

fn eta_at(base: &Scenario, d: f64) -> Result<(f64, f64, f64)> {
    let s = SweepVariable::Thickness.apply(base, d)?;
    let e = s.evaluate()?;
    let mode = s.active.lock_mode();
    Ok((e.result.eta, e.cooperativities.c_em(mode), e.cooperativities.c_om(mode)))
}

/// Locates the thickness maximizing the with-cavity efficiency inside `[lo, hi]` (m).
///
/// Fails with [`Error::BoundaryMaximum`] when the best grid point is an endpoint.
pub fn find_optimal_thickness(scenario: &Scenario, lo: f64, hi: f64, tolerance: f64) -> Result<OptimalThickness> {
    if scenario.configuration != Configuration::WithOpticalCavity {
        return Err(Error::invalid("configuration", "optimal thickness needs the optical cavity configuration"));
    }
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(Error::invalid("tolerance", format!("must be in (0, 1), got {tolerance}")));
    }
    let mut base = Scenario { coupling_backend: CouplingBackend::ThicknessLaw, ..scenario.clone() };
    base.lock = ResonanceLock::Full;

    let grid = SweepRange::new(lo, hi, GRID_POINTS, super::Scale::Log)?.points();
    let etas = grid.iter().map(|&d| eta_at(&base, d).map(|r| r.0)).collect::<Result<Vec<_>>>()?;
    let best = etas.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).map(|(i, _)| i).expect("non-empty grid");
    if best == 0 || best == GRID_POINTS - 1 {
        return Err(Error::BoundaryMaximum { thickness: grid[best] });
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let f = |x: f64| eta_at(&base, x.exp()).map(|r| r.0);
    let (mut a, mut b) = (grid[best - 1].ln(), grid[best + 1].ln());
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    // Bracket width in ln d equals the relative tolerance in d.
    while b - a > tolerance {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let d_star = (0.5 * (a + b)).exp();
    let (eta_star, c_em, c_om) = eta_at(&base, d_star)?;
    Ok(OptimalThickness { d_star, eta_star, c_em, c_om })
}
