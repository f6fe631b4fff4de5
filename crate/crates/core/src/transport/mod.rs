//! State-selective transport of the ground-state atom between two tweezers.

pub mod classical;
pub mod potential;
pub mod ramp;
pub mod tdho;

use rayon::prelude::*;

pub use classical::{classical_gaussian_check, classical_harmonic_check, ClassicalOutcome};
pub use potential::{BaseTrap, Potential, TransportTrap};
pub use ramp::{effective_harmonic, Profile, RampKind, RampProtocol, Segment, TransportSetup};
pub use tdho::{
    evolve_between, evolve_tdho, ground_state_fidelity, run_tdho, to_dsr, transport_sequence_fidelity,
    DisplacedSqueezedState, GaussianMotionalState, TdhoRun, DEFAULT_TOL,
};

use crate::error::{Error, Result};

/// Which part of the transport a scan exercises.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Stage {
    RampUp,
    Sweep,
    /// Ramp-up, sweep and ramp-down with the given up/down and sweep times.
    Full { t_up: f64, t_sweep: f64 },
}

/// Builds the ramp of `kind` for `stage` lasting `t` (ignored for `Full`).
pub fn stage_ramp(setup: &TransportSetup, kind: RampKind, stage: Stage, t: f64) -> Result<RampProtocol> {
    match (kind, stage) {
        (RampKind::Naive, Stage::RampUp) => setup.naive_up(t),
        (RampKind::Naive, Stage::Sweep) => setup.naive_sweep(t),
        (RampKind::Naive, Stage::Full { t_up, t_sweep }) => setup.naive(t_up, t_sweep, t_up),
        (RampKind::LocallyAdiabatic, Stage::RampUp) => setup.adiabatic_up(t),
        (RampKind::LocallyAdiabatic, Stage::Sweep) => setup.adiabatic_sweep(t),
        (RampKind::LocallyAdiabatic, Stage::Full { t_up, t_sweep }) => setup.locally_adiabatic(t_up, t_sweep, t_up),
        (RampKind::Custom, _) => Err(Error::Domain("custom ramps are supplied as files, not built".into())),
    }
}

pub fn stage_infidelity(setup: &TransportSetup, kind: RampKind, stage: Stage, t: f64) -> Result<f64> {
    let ramp = stage_ramp(setup, kind, stage, t)?;
    Ok(1.0 - transport_sequence_fidelity(&ramp)?)
}

/// Evaluates `f` at every point in parallel; results keep input order.
pub fn scan<F>(points: &[f64], f: F) -> Vec<Result<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    points.par_iter().map(|&p| f(p)).collect()
}

/// Location and value of the first local minimum of `f` on [lo, hi], found
/// on an `n`-point grid and refined by golden-section search.
pub fn first_dip<F>(f: F, lo: f64, hi: f64, n: usize) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if !(hi > lo) || n < 3 {
        return Err(Error::Domain("dip search needs hi > lo and at least 3 points".into()));
    }
    let grid: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    let values = scan(&grid, &f).into_iter().collect::<Result<Vec<_>>>()?;
    let i = (1..n - 1)
        .find(|&i| values[i] <= values[i - 1] && values[i] <= values[i + 1])
        .ok_or_else(|| Error::Root(format!("no interior minimum on [{lo:e}, {hi:e}]")))?;
    let (mut a, mut b) = (grid[i - 1], grid[i + 1]);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while (b - a) > 1e-6 * (hi - lo) / n as f64 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}
