//! Physical constants and unit conversions.
//!
//! Every frequency and rate inside the crate is an angular frequency in rad/s.
//! Anything read from or written to a file is an ordinary frequency in Hz.

use std::f64::consts::PI;

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Vacuum permeability (T·m/A).
pub const MU_0: f64 = 1.256_637_062_12e-6;
/// Electron gyromagnetic ratio magnitude (rad/s/T).
pub const ELECTRON_GYRO: f64 = 1.760_859_630_23e11;

pub const MILLIMETER: f64 = 1e-3;
pub const MICROMETER: f64 = 1e-6;
pub const CUBIC_MILLIMETER: f64 = 1e-9;

/// Faraday rotation of YIG, 20 degrees per millimeter, in rad/m.
pub const THETA_F_YIG: f64 = 20.0 * PI / 180.0 / MILLIMETER;

/// Hz -> rad/s.
#[inline]
pub fn angular(hz: f64) -> f64 {
    2.0 * PI * hz
}

/// rad/s -> Hz.
#[inline]
pub fn ordinary(rad_per_s: f64) -> f64 {
    rad_per_s / (2.0 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = 20e9;
        assert!((ordinary(angular(f)) - f).abs() <= 1e-15 * f);
    }

    #[test]
    fn yig_faraday_in_rad_per_meter() {
        assert!((THETA_F_YIG - 349.065_850_398_865_9).abs() < 1e-9);
    }
}
