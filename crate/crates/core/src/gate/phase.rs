//! Sensitivity of the collisional phases to beam pointing and intensity.

use serde::{Deserialize, Serialize};

use super::engine::GateSchedule;
use crate::constants::{HBAR, TWO_PI};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSensitivity {
    /// ∫U⁻ dt/ħ, rad.
    pub phi_s: f64,
    /// ∫V_d dt/ħ, rad.
    pub phi_d: f64,
    /// φ_s − φ_d reduced to [0, 2π).
    pub differential: f64,
    /// σ_x/a_tw, the first-order bound on δφ/φ.
    pub fractional_linear: f64,
    /// (σ_x/a_tw)², the estimate for a pointing error about the trap
    /// centre, where the overlap changes only to second order.
    pub fractional_quadratic: f64,
    /// Fluctuation of φ_s − φ_d from pointing, first-order bound, rad.
    pub delta_phi: f64,
    /// ε + δφ²/4.
    pub infidelity: f64,
}

/// Collisional phases accumulated over `schedule` and their sensitivity
/// to a relative intensity error ε and a pointing jitter σ_x.
pub fn phase_sensitivity(epsilon: f64, sigma_x: f64, a_tw: f64, schedule: &GateSchedule) -> Result<PhaseSensitivity> {
    if !(epsilon >= 0.0 && sigma_x >= 0.0) {
        return Err(Error::Domain("epsilon and sigma_x must be non-negative".into()));
    }
    if !(a_tw > 0.0) {
        return Err(Error::Domain(format!("a_tw must be positive, got {a_tw}")));
    }
    schedule.validate()?;
    let phi_s: f64 = schedule.segments.iter().map(|s| s.energies.u_minus * s.duration / HBAR).sum();
    let phi_d: f64 = schedule.segments.iter().map(|s| s.energies.v_d * s.duration / HBAR).sum();
    let fractional_linear = sigma_x / a_tw;
    let delta_phi = fractional_linear * (phi_s.abs() + phi_d.abs());
    Ok(PhaseSensitivity {
        phi_s,
        phi_d,
        differential: (phi_s - phi_d).rem_euclid(TWO_PI),
        fractional_linear,
        fractional_quadratic: fractional_linear * fractional_linear,
        delta_phi,
        infidelity: epsilon + delta_phi * delta_phi / 4.0,
    })
}
