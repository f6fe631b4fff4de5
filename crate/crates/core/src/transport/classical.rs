//! Classical point-particle check of a ramp in the full Gaussian potential.

use super::ramp::{RampProtocol, Tracker};
use super::tdho::Reference;
use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::ode::Dop853;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalOutcome {
    /// 1 − exp(−|α|²) for the final coherent displacement α.
    pub infidelity: f64,
    /// Largest distance from the instantaneous potential minimum, in units of
    /// the transport-beam waist.
    pub max_excursion: f64,
}

#[derive(Clone, Copy)]
enum Model {
    Gaussian,
    Harmonic,
}

/// Newton's equations in the summed-Gaussian potential, starting at rest in
/// the initial minimum. Fails with [`Error::Escape`] once the energy exceeds
/// the lowest barrier around the well.
pub fn classical_gaussian_check(ramp: &RampProtocol, t_end: f64) -> Result<ClassicalOutcome> {
    run(ramp, t_end, Model::Gaussian)
}

/// The same trajectory in the local harmonic approximation. Its final
/// displacement equals the quantum z coefficient.
pub fn classical_harmonic_check(ramp: &RampProtocol, t_end: f64) -> Result<ClassicalOutcome> {
    run(ramp, t_end, Model::Harmonic)
}

fn run(ramp: &RampProtocol, t_end: f64, model: Model) -> Result<ClassicalOutcome> {
    let total = ramp.total_duration();
    if !(0.0..=total * (1.0 + 1e-12)).contains(&t_end) {
        return Err(Error::Domain(format!("t = {t_end:e} s outside the ramp duration {total:e} s")));
    }
    let reference = Reference::of(ramp)?;
    let (w0, x0, m) = (reference.omega0, reference.x0, ramp.mass);
    let accel_scale = 1.0 / (m * x0 * w0 * w0);
    let mut tracker = Tracker::new(ramp)?;
    let mut y = [reference.x_c0 / x0, 0.0];
    let solver = Dop853::new(1e-11, 1e-11);
    let bps = ramp.breakpoints();
    let waist = ramp.transport_trap.waist;
    let mut max_excursion: f64 = 0.0;

    for k in 0..ramp.segments.len() {
        let (a, b) = (bps[k], bps[k + 1].min(t_end));
        if b <= a {
            break;
        }
        let rhs = |tau: f64, y: &[f64], dy: &mut [f64]| -> Result<()> {
            let s = tracker.at_in(k, tau / w0 - a)?;
            let x = y[0] * x0;
            let force = match model {
                Model::Gaussian => -ramp.potential(s.beam_depth, s.beam_center).derivatives(x)[1],
                Model::Harmonic => -m * s.omega * s.omega * (x - s.x_min),
            };
            dy[0] = y[1];
            dy[1] = force * accel_scale;
            Ok(())
        };
        let mut check = Tracker::new(ramp)?;
        solver.integrate_observed(rhs, a * w0, b * w0, &mut y, |tau, y| {
            let t = tau / w0;
            let s = check.at_in(k, t - a)?;
            let x = y[0] * x0;
            max_excursion = max_excursion.max((x - s.x_min).abs() / waist);
            if let Model::Gaussian = model {
                let p = ramp.potential(s.beam_depth, s.beam_center);
                let kinetic = 0.5 * m * (y[1] * x0 * w0).powi(2);
                if kinetic + p.value(x) > p.barrier(s.x_min) {
                    return Err(Error::Escape { t });
                }
            }
            Ok(())
        })?;
    }

    let s = tracker.at(t_end)?;
    let xf = (HBAR / (m * s.omega)).sqrt();
    let dx = y[0] * x0 - s.x_min;
    let dp = m * y[1] * x0 * w0;
    let alpha_sq = 0.5 * ((dx / xf).powi(2) + (dp * xf / HBAR).powi(2));
    Ok(ClassicalOutcome { infidelity: -(-alpha_sq).exp_m1(), max_excursion })
}
