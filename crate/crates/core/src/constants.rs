//! CODATA 2018 constants.

pub const H: f64 = 6.626_070_15e-34;
/// h/2π
pub const HBAR: f64 = H / TWO_PI;
pub const ATOMIC_MASS: f64 = 1.660_539_066_60e-27;
pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;

pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Angular frequency for a frequency given in kHz.
pub fn khz(f: f64) -> f64 {
    TWO_PI * f * 1e3
}

/// Energy h·f for a frequency given in kHz.
pub fn h_khz(f: f64) -> f64 {
    H * f * 1e3
}
