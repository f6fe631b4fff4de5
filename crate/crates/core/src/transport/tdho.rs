//! Exact Gaussian dynamics of a single atom in a moving, breathing harmonic
//! trap.
//!
//! The annihilation operator evolves as â(t) = u â₀ + v â₀† + z, where â₀
//! belongs to the reference oscillator of frequency ω₀ and length x₀.
//! Time is integrated in units of 1/ω₀.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ramp::{RampProtocol, Tracker};
use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::ode::{Dop853, Stats};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianMotionalState {
    pub u: Complex64,
    pub v: Complex64,
    pub z: Complex64,
    /// rad/s
    pub reference_frequency: f64,
    /// m
    pub reference_length: f64,
}

impl GaussianMotionalState {
    pub fn ground(reference_frequency: f64, reference_length: f64) -> Self {
        GaussianMotionalState {
            u: Complex64::new(1.0, 0.0),
            v: Complex64::new(0.0, 0.0),
            z: Complex64::new(0.0, 0.0),
            reference_frequency,
            reference_length,
        }
    }

    /// |u|² − |v|² − 1, zero for any physical evolution.
    pub fn symplectic_error(&self) -> f64 {
        self.u.norm_sqr() - self.v.norm_sqr() - 1.0
    }

    fn to_vec(self) -> [f64; 6] {
        [self.u.re, self.u.im, self.v.re, self.v.im, self.z.re, self.z.im]
    }

    fn with_vec(self, y: &[f64]) -> Self {
        GaussianMotionalState {
            u: Complex64::new(y[0], y[1]),
            v: Complex64::new(y[2], y[3]),
            z: Complex64::new(y[4], y[5]),
            ..self
        }
    }
}

/// The state D(α) S(ζ) R(θ)|0⟩ with S(ζ) = exp(½(ζ̄â² − ζâ†²)) and
/// R(θ) = exp(−iθ â†â).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisplacedSqueezedState {
    pub alpha: Complex64,
    pub zeta: Complex64,
    pub theta: f64,
}

impl DisplacedSqueezedState {
    /// Ground state of a trap of frequency ω centred at x_c, expressed in
    /// the reference oscillator (frequency ω₀, length x₀, centre x_c0).
    pub fn instantaneous_ground(omega: f64, x_c: f64, omega0: f64, x0: f64, x_c0: f64) -> Self {
        DisplacedSqueezedState {
            alpha: Complex64::new((x_c - x_c0) / (std::f64::consts::SQRT_2 * x0), 0.0),
            zeta: Complex64::new(0.5 * (omega / omega0).ln(), 0.0),
            theta: 0.0,
        }
    }
}

const SYMPLECTIC_SLACK: f64 = 1e-8;

/// Displacement, squeezing and rotation reproducing (u, v, z).
pub fn to_dsr(state: &GaussianMotionalState) -> Result<DisplacedSqueezedState> {
    let mu = state.u.norm();
    if mu < 1.0 - SYMPLECTIC_SLACK || state.symplectic_error().abs() > SYMPLECTIC_SLACK {
        return Err(Error::Invariant(format!(
            "|u| = {mu:.12}, |u|^2 - |v|^2 - 1 = {:.3e}",
            state.symplectic_error()
        )));
    }
    let theta = -state.u.arg();
    let r = mu.max(1.0).acosh();
    let zeta = if state.v.norm() == 0.0 || r == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::from_polar(r, state.u.arg() + state.v.arg() - std::f64::consts::PI)
    };
    Ok(DisplacedSqueezedState { alpha: state.z, zeta, theta })
}

/// |⟨ψ₁|ψ₂⟩|² for two displaced squeezed vacua. Rotations drop out.
pub fn ground_state_fidelity(a: &DisplacedSqueezedState, b: &DisplacedSqueezedState) -> f64 {
    let (r1, p1) = (a.zeta.norm(), a.zeta.arg());
    let (r2, p2) = (b.zeta.norm(), b.zeta.arg());
    let sigma = Complex64::new(r1.cosh() * r2.cosh(), 0.0)
        - Complex64::from_polar(r1.sinh() * r2.sinh(), p1 - p2);
    let eta = |aj: Complex64, ak: Complex64, r: f64, p: f64| {
        (aj - ak) * r.cosh() + Complex64::from_polar(r.sinh(), p) * (aj - ak).conj()
    };
    let e21 = eta(b.alpha, a.alpha, r2, p2);
    let e12 = eta(a.alpha, b.alpha, r1, p1);
    let f = (e21 * e12.conj() / sigma.conj()).re.exp() / sigma.norm();
    f.clamp(0.0, 1.0)
}

/// Reference oscillator and starting trap centre of a ramp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reference {
    pub omega0: f64,
    pub x0: f64,
    pub x_c0: f64,
}

impl Reference {
    pub fn of(ramp: &RampProtocol) -> Result<Self> {
        let s = Tracker::new(ramp)?.at(0.0)?;
        Ok(Reference { omega0: s.omega, x0: (HBAR / (ramp.mass * s.omega)).sqrt(), x_c0: s.x_min })
    }

    pub fn target(&self, omega: f64, x_c: f64) -> DisplacedSqueezedState {
        DisplacedSqueezedState::instantaneous_ground(omega, x_c, self.omega0, self.x0, self.x_c0)
    }
}

/// One recorded point of an integrated ramp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TdhoSample {
    pub t: f64,
    pub state: GaussianMotionalState,
    pub omega: f64,
    pub x_c: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TdhoRun {
    pub state: GaussianMotionalState,
    /// Overlap with the instantaneous ground state at the final time.
    pub fidelity: f64,
    /// Largest |u|² − |v|² − 1 seen on any accepted step.
    pub max_symplectic_error: f64,
    pub stats: Stats,
}

/// Right-hand side in reduced time τ = ω₀t for trap ratio r = (ω/ω₀)² and
/// force term f = r (x_c − x_c0)/(√2 x₀).
#[inline]
pub(crate) fn tdho_rhs(y: &[f64], r: f64, force: f64, dy: &mut [f64]) {
    let om = 0.5 * (r + 1.0);
    let et = 0.5 * (r - 1.0);
    let u = Complex64::new(y[0], y[1]);
    let v = Complex64::new(y[2], y[3]);
    let z = Complex64::new(y[4], y[5]);
    let du = -I * (u * om + v.conj() * et);
    let dv = -I * (v * om + u.conj() * et);
    let dz = -I * (z * om + z.conj() * et - force);
    dy.copy_from_slice(&[du.re, du.im, dv.re, dv.im, dz.re, dz.im]);
}

/// Integrates the ramp from `t_start` (state `start`) to `t_end`; either
/// direction. `observe` sees every accepted step.
pub fn evolve_between<O>(
    ramp: &RampProtocol,
    start: GaussianMotionalState,
    t_start: f64,
    t_end: f64,
    tol: f64,
    mut observe: O,
) -> Result<TdhoRun>
where
    O: FnMut(&TdhoSample) -> Result<()>,
{
    let total = ramp.total_duration();
    for t in [t_start, t_end] {
        if !(-1e-15 * total..=total * (1.0 + 1e-12)).contains(&t) {
            return Err(Error::Domain(format!("t = {t:e} s outside the ramp duration {total:e} s")));
        }
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let reference = Reference::of(ramp)?;
    let omega0 = reference.omega0;
    if (start.reference_frequency / omega0 - 1.0).abs() > 1e-12 {
        return Err(Error::Domain("state and ramp use different reference oscillators".into()));
    }
    let scale = std::f64::consts::SQRT_2 * reference.x0;
    let mut tracker = Tracker::new(ramp)?;
    let solver = Dop853::new(tol, tol);
    let mut y = start.to_vec();
    let mut max_symp = start.symplectic_error().abs();
    let mut stats = Stats::default();

    let bps = ramp.breakpoints();
    let dir = if t_end >= t_start { 1.0 } else { -1.0 };
    // Absolute times where the integration must stop and restart.
    let mut stops: Vec<(usize, f64, f64)> = Vec::new();
    for k in 0..ramp.segments.len() {
        let (a, b) = (bps[k], bps[k + 1]);
        let lo = a.max(t_start.min(t_end));
        let hi = b.min(t_start.max(t_end));
        if hi > lo {
            stops.push((k, lo, hi));
        }
    }
    if dir < 0.0 {
        stops.reverse();
    }

    let mut last_snap = tracker.at(t_start)?;
    for (k, lo, hi) in stops {
        let (from, to) = if dir > 0.0 { (lo, hi) } else { (hi, lo) };
        let seg_start = bps[k];
        let rhs = |tau: f64, y: &[f64], dy: &mut [f64]| -> Result<()> {
            let s = tracker.at_in(k, tau / omega0 - seg_start)?;
            let r = (s.omega / omega0).powi(2);
            tdho_rhs(y, r, r * (s.x_min - reference.x_c0) / scale, dy);
            Ok(())
        };
        let mut samples: Vec<(f64, [f64; 6])> = Vec::new();
        let st = solver.integrate_observed(rhs, from * omega0, to * omega0, &mut y, |tau, y| {
            let e = (y[0] * y[0] + y[1] * y[1] - y[2] * y[2] - y[3] * y[3] - 1.0).abs();
            max_symp = max_symp.max(e);
            samples.push((tau / omega0, [y[0], y[1], y[2], y[3], y[4], y[5]]));
            Ok(())
        })?;
        stats.accepted += st.accepted;
        stats.rejected += st.rejected;
        stats.evaluations += st.evaluations;
        for (t, yv) in samples {
            let s = tracker.at_in(k, t - seg_start)?;
            let state = start.with_vec(&yv);
            let fidelity = ground_state_fidelity(&to_dsr(&state)?, &reference.target(s.omega, s.x_min));
            observe(&TdhoSample { t, state, omega: s.omega, x_c: s.x_min, fidelity })?;
        }
        last_snap = tracker.at_in(k, to - seg_start)?;
    }
    let state = start.with_vec(&y);
    if max_symp > 1e-9 {
        return Err(Error::Invariant(format!("symplectic invariant drifted by {max_symp:.3e}")));
    }
    let fidelity = ground_state_fidelity(&to_dsr(&state)?, &reference.target(last_snap.omega, last_snap.x_min));
    Ok(TdhoRun { state, fidelity, max_symplectic_error: max_symp, stats })
}

/// Evolves the initial ground state from t = 0 to `t_end` with local
/// error control `tol`.
pub fn evolve_tdho(ramp: &RampProtocol, t_end: f64, tol: f64) -> Result<GaussianMotionalState> {
    Ok(run_tdho(ramp, t_end, tol)?.state)
}

/// Like [`evolve_tdho`] with diagnostics. Long ramps whose symplectic drift
/// exceeds the invariant bound are retried with up to 100× tighter
/// tolerance.
pub fn run_tdho(ramp: &RampProtocol, t_end: f64, tol: f64) -> Result<TdhoRun> {
    let reference = Reference::of(ramp)?;
    let start = GaussianMotionalState::ground(reference.omega0, reference.x0);
    let mut tol = tol;
    let mut retries = 2;
    loop {
        match evolve_between(ramp, start, 0.0, t_end, tol, |_| Ok(())) {
            Err(Error::Invariant(_)) if retries > 0 && tol > 1e-14 => {
                tol = (tol / 10.0).max(1e-14);
                retries -= 1;
            }
            other => return other,
        }
    }
}

pub const DEFAULT_TOL: f64 = 1e-10;

/// Final ground-state population after the whole ramp.
pub fn transport_sequence_fidelity(ramp: &RampProtocol) -> Result<f64> {
    Ok(run_tdho(ramp, ramp.total_duration(), DEFAULT_TOL)?.fidelity)
}
