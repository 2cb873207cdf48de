//! Physical constants and default analysis settings.

use std::f64::consts::PI;

/// Speed of light in vacuum [m/s].
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Reduced Planck constant [J·s].
pub const HBAR: f64 = 1.054_571_817e-34;

/// Lowest analysis frequency accepted anywhere [Hz]. The ponderomotive gain
/// diverges as Ω → 0.
pub const MIN_FREQUENCY_HZ: f64 = 0.1;

pub const DEFAULT_F_MIN_HZ: f64 = 5.0;
pub const DEFAULT_F_MAX_HZ: f64 = 5000.0;
pub const DEFAULT_POINTS: usize = 1000;

/// Largest accepted |r| for a squeezing matrix; e^40 is still far from
/// overflow.
pub const MAX_SQUEEZE_FACTOR: f64 = 20.0;

/// |det(I − √R·K)| below this is treated as the lasing threshold.
pub const LASING_DET_THRESHOLD: f64 = 1e-14;

/// Angular frequency of a 1064 nm carrier [rad/s].
pub fn omega_from_wavelength(wavelength_m: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT / wavelength_m
}

pub fn angular(f_hz: f64) -> f64 {
    2.0 * PI * f_hz
}

pub fn hertz(omega: f64) -> f64 {
    omega / (2.0 * PI)
}
