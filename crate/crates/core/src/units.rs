//! Frequency unit helpers. Everything inside the crate is angular frequency
//! in rad/s and time in seconds.

use std::f64::consts::PI;

/// Angular frequency for a value quoted as `2π × value MHz`.
pub fn mhz_2pi(value: f64) -> f64 {
    2.0 * PI * value * 1e6
}

/// Inverse of [`mhz_2pi`].
pub fn to_mhz_2pi(omega: f64) -> f64 {
    omega / (2.0 * PI * 1e6)
}

pub const NANOSECOND: f64 = 1e-9;
pub const MICROSECOND: f64 = 1e-6;
