//! Transport ramps and tracking of the harmonic approximation along them.

use serde::{Deserialize, Serialize};

use super::potential::{gaussian_derivatives, BaseTrap, Potential, TransportTrap};
use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::species::SpeciesParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RampKind {
    Naive,
    LocallyAdiabatic,
    Custom,
}

/// How the transport beam evolves over one segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "profile", rename_all = "snake_case", deny_unknown_fields)]
pub enum Profile {
    /// Beam depth (J) and centre (m) interpolate linearly.
    Linear { depth: [f64; 2], center: [f64; 2] },
    /// Beam held at `center`; its depth follows whatever gives the trap
    /// frequency ω(τ) with 1/ω linear in time, so |ω̇|/ω² is constant.
    FrequencyRamp { omega: [f64; 2], center: f64 },
    /// Trap frequency held at `omega` while the potential minimum moves at
    /// constant speed; beam depth and centre are solved for at each instant.
    MinimumSweep { omega: f64, minimum: [f64; 2] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    /// s
    pub duration: f64,
    #[serde(flatten)]
    pub profile: Profile,
}

impl Segment {
    /// The constant adiabaticity of an adiabatic profile: |ω̇|/ω² for
    /// frequency ramps, |ẋ_c|/(x_ho·ω) for sweeps. `None` for linear ones.
    pub fn adiabaticity(&self, mass: f64) -> Option<f64> {
        match self.profile {
            Profile::FrequencyRamp { omega, .. } => Some((1.0 / omega[0] - 1.0 / omega[1]).abs() / self.duration),
            Profile::MinimumSweep { omega, minimum } => {
                let x_ho = (HBAR / (mass * omega)).sqrt();
                Some((minimum[1] - minimum[0]).abs() / self.duration / (x_ho * omega))
            }
            Profile::Linear { .. } => None,
        }
    }

    fn reversed(&self) -> Segment {
        let profile = match self.profile {
            Profile::Linear { depth, center } => {
                Profile::Linear { depth: [depth[1], depth[0]], center: [center[1], center[0]] }
            }
            Profile::FrequencyRamp { omega, center } => Profile::FrequencyRamp { omega: [omega[1], omega[0]], center },
            Profile::MinimumSweep { omega, minimum } => {
                Profile::MinimumSweep { omega, minimum: [minimum[1], minimum[0]] }
            }
        };
        Segment { duration: self.duration, profile }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RampProtocol {
    pub kind: RampKind,
    /// Mass of the transported atom, kg.
    pub mass: f64,
    pub base_trap: BaseTrap,
    pub transport_trap: TransportTrap,
    pub segments: Vec<Segment>,
}

/// Transport beam and harmonic fit at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snapshot {
    pub beam_depth: f64,
    pub beam_center: f64,
    /// Position of the tracked potential minimum, m.
    pub x_min: f64,
    /// sqrt(U''(x_min)/m), rad/s.
    pub omega: f64,
}

impl RampProtocol {
    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    pub fn potential(&self, beam_depth: f64, beam_center: f64) -> Potential<'_> {
        Potential { base: &self.base_trap, beam_depth, beam_center, beam_waist: self.transport_trap.waist }
    }

    /// The exact time reverse: segments in opposite order, each run backwards.
    pub fn reversed(&self) -> RampProtocol {
        RampProtocol { segments: self.segments.iter().rev().map(Segment::reversed).collect(), ..self.clone() }
    }

    /// Concatenation of two ramps sharing the same traps.
    pub fn then(&self, next: &RampProtocol) -> RampProtocol {
        let mut segments = self.segments.clone();
        segments.extend(next.segments.iter().cloned());
        let kind = if self.kind == next.kind { self.kind } else { RampKind::Custom };
        RampProtocol { kind, segments, ..self.clone() }
    }

    /// Segment index and local time for an absolute time.
    pub fn locate(&self, t: f64) -> (usize, f64) {
        let mut start = 0.0;
        for (i, s) in self.segments.iter().enumerate() {
            if t < start + s.duration || i + 1 == self.segments.len() {
                return (i, (t - start).clamp(0.0, s.duration));
            }
            start += s.duration;
        }
        (0, 0.0)
    }

    /// Absolute start time of every segment plus the total duration.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = vec![0.0];
        let mut acc = 0.0;
        for s in &self.segments {
            acc += s.duration;
            out.push(acc);
        }
        out
    }

    /// Checks durations, per-kind segment shapes and continuity of the beam
    /// and of the harmonic fit across segment boundaries.
    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0) || !(self.base_trap.depth > 0.0) || !(self.base_trap.waist > 0.0) {
            return Err(Error::InvalidRamp("mass, base depth and waist must be positive".into()));
        }
        if !(self.transport_trap.waist > 0.0) {
            return Err(Error::InvalidRamp("transport waist must be positive".into()));
        }
        for (i, s) in self.segments.iter().enumerate() {
            if !(s.duration > 0.0 && s.duration.is_finite()) {
                return Err(Error::InvalidRamp(format!("segment {i}: duration must be positive, got {}", s.duration)));
            }
            let shape_ok = match (self.kind, &s.profile) {
                (RampKind::Custom, _) => true,
                (RampKind::Naive, Profile::Linear { depth, center }) => depth[0] == depth[1] || center[0] == center[1],
                (RampKind::Naive, _) => false,
                (RampKind::LocallyAdiabatic, Profile::Linear { .. }) => false,
                (RampKind::LocallyAdiabatic, _) => true,
            };
            if !shape_ok {
                return Err(Error::InvalidRamp(format!(
                    "segment {i}: profile {:?} is not allowed in a {:?} ramp",
                    s.profile, self.kind
                )));
            }
            match s.profile {
                Profile::FrequencyRamp { omega, .. } if !(omega[0] > 0.0 && omega[1] > 0.0) =>
                {
                    return Err(Error::InvalidRamp(format!("segment {i}: frequencies must be positive")));
                }
                Profile::MinimumSweep { omega, .. } if !(omega > 0.0) => {
                    return Err(Error::InvalidRamp(format!("segment {i}: frequency must be positive")));
                }
                _ => {}
            }
        }
        let mut tracker = Tracker::new(self)?;
        let bps = self.breakpoints();
        for k in 1..self.segments.len() {
            let end = tracker.at_in(k - 1, self.segments[k - 1].duration)?;
            let start = tracker.at_in(k, 0.0)?;
            let depth_tol = 1e-6 * self.base_trap.depth;
            let len_tol = 1e-6 * self.transport_trap.waist;
            let beam_jump = (end.beam_depth - start.beam_depth).abs() > depth_tol
                || (end.beam_depth.abs() > depth_tol && (end.beam_center - start.beam_center).abs() > len_tol);
            if beam_jump || (end.x_min - start.x_min).abs() > len_tol {
                return Err(Error::InvalidRamp(format!(
                    "discontinuity at t = {:.6e} s between segments {} and {}: beam ({:.6e} J, {:.6e} m) -> ({:.6e} J, {:.6e} m)",
                    bps[k], k - 1, k, end.beam_depth, end.beam_center, start.beam_depth, start.beam_center
                )));
            }
        }
        Ok(())
    }
}

/// Follows the potential minimum continuously from the initial atom position.
///
/// Evaluations may come in any order; large jumps in time are bridged by
/// continuation so the minimum, and the beam parameters solved for the
/// adiabatic profiles, stay on the same branch.
#[derive(Debug, Clone)]
pub struct Tracker<'a> {
    ramp: &'a RampProtocol,
    breakpoints: Vec<f64>,
    t_last: f64,
    last: Snapshot,
}

impl<'a> Tracker<'a> {
    pub fn new(ramp: &'a RampProtocol) -> Result<Self> {
        if ramp.segments.is_empty() {
            let p = ramp.potential(0.0, 0.0);
            let guess = ramp.base_trap.centers.first().copied().unwrap_or(0.0);
            let x = p.minimum_near(guess)?;
            let omega = (p.derivatives(x)[2] / ramp.mass).sqrt();
            return Ok(Tracker {
                ramp,
                breakpoints: vec![0.0],
                t_last: 0.0,
                last: Snapshot { beam_depth: 0.0, beam_center: guess, x_min: x, omega },
            });
        }
        let (depth, center, x_guess) = match ramp.segments[0].profile {
            Profile::Linear { depth, center } => (depth[0], center[0], center[0]),
            Profile::FrequencyRamp { center, .. } => (0.0, center, center),
            Profile::MinimumSweep { minimum, .. } => (ramp.transport_trap.max_depth, minimum[0], minimum[0]),
        };
        let seed = Snapshot { beam_depth: depth, beam_center: center, x_min: x_guess, omega: 0.0 };
        let mut tracker = Tracker { ramp, breakpoints: ramp.breakpoints(), t_last: 0.0, last: seed };
        tracker.last = tracker.solve(0, 0.0, seed)?;
        Ok(tracker)
    }

    pub fn ramp(&self) -> &RampProtocol {
        self.ramp
    }

    /// Beam and harmonic fit at absolute time t.
    pub fn at(&mut self, t: f64) -> Result<Snapshot> {
        if self.ramp.segments.is_empty() {
            return Ok(self.last);
        }
        let total = *self.breakpoints.last().unwrap_or(&0.0);
        let t = t.clamp(0.0, total);
        let max_jump = total / 512.0;
        let n = ((t - self.t_last).abs() / max_jump).ceil().max(1.0) as usize;
        let t0 = self.t_last;
        for i in 1..=n {
            let ti = if i == n { t } else { t0 + (t - t0) * i as f64 / n as f64 };
            let (k, tau) = self.ramp.locate(ti);
            let s = self.solve(k, tau, self.last)?;
            if (s.x_min - self.last.x_min).abs() > 0.25 * self.ramp.transport_trap.waist {
                return Err(Error::InvalidRamp(format!(
                    "tracked minimum jumps from {:.6e} m to {:.6e} m near t = {:.6e} s (double well)",
                    self.last.x_min, s.x_min, ti
                )));
            }
            self.last = s;
            self.t_last = ti;
        }
        Ok(self.last)
    }

    /// Snapshot at local time `tau` of segment `k`. Differs from
    /// [`at`](Self::at) only on segment boundaries, where it evaluates the
    /// requested side.
    pub fn at_in(&mut self, k: usize, tau: f64) -> Result<Snapshot> {
        let t = self.breakpoints[k] + tau;
        self.at(t)?;
        if self.ramp.locate(t).0 != k {
            self.last = self.solve(k, tau.clamp(0.0, self.ramp.segments[k].duration), self.last)?;
        }
        Ok(self.last)
    }

    fn solve(&self, k: usize, tau: f64, guess: Snapshot) -> Result<Snapshot> {
        let seg = &self.ramp.segments[k];
        let frac = if seg.duration > 0.0 { tau / seg.duration } else { 0.0 };
        match seg.profile {
            Profile::Linear { depth, center } => {
                let d = depth[0] + (depth[1] - depth[0]) * frac;
                let c = center[0] + (center[1] - center[0]) * frac;
                self.finish(d, c, guess.x_min)
            }
            Profile::FrequencyRamp { omega, center } => {
                let inv = 1.0 / omega[0] + (1.0 / omega[1] - 1.0 / omega[0]) * frac;
                self.solve_frequency(1.0 / inv, center, guess)
            }
            Profile::MinimumSweep { omega, minimum } => {
                let x = minimum[0] + (minimum[1] - minimum[0]) * frac;
                self.solve_sweep(omega, x, guess)
            }
        }
    }

    fn finish(&self, depth: f64, center: f64, x_guess: f64) -> Result<Snapshot> {
        let p = self.ramp.potential(depth, center);
        let x = p.minimum_near(x_guess)?;
        let curvature = p.derivatives(x)[2];
        Ok(Snapshot { beam_depth: depth, beam_center: center, x_min: x, omega: (curvature / self.ramp.mass).sqrt() })
    }

    /// Beam depth at fixed centre giving curvature mω² at the tracked minimum.
    fn solve_frequency(&self, omega: f64, center: f64, guess: Snapshot) -> Result<Snapshot> {
        let v = self.ramp.base_trap.depth;
        let w = self.ramp.transport_trap.waist;
        let target = self.ramp.mass * omega * omega;
        let mut s = guess.beam_depth / v;
        let mut x = guess.x_min;
        for _ in 0..60 {
            let p = self.ramp.potential(s * v, center);
            x = p.minimum_near(x)?;
            let d = p.derivatives(x);
            let g = gaussian_derivatives(x - center, w);
            let dx_ds = v * g[1] / d[2];
            let df = -v * g[2] + d[3] * dx_ds;
            let f = d[2] - target;
            if df == 0.0 {
                break;
            }
            let step = -f / df;
            s += step;
            if step.abs() < 1e-14 * (1.0 + s.abs()) {
                return self.finish(s * v, center, x);
            }
        }
        Err(Error::InvalidRamp(format!(
            "no beam depth reaches trap frequency {:.6e} rad/s with the beam at {:.6e} m",
            omega, center
        )))
    }

    /// Beam depth and centre placing a minimum of curvature mω² at `x`.
    fn solve_sweep(&self, omega: f64, x: f64, guess: Snapshot) -> Result<Snapshot> {
        let v = self.ramp.base_trap.depth;
        let w = self.ramp.transport_trap.waist;
        let target = self.ramp.mass * omega * omega;
        let base = self.ramp.potential(0.0, 0.0).derivatives(x);
        let (mut s, mut c) = (guess.beam_depth / v, (guess.beam_center - x) / w);
        for _ in 0..60 {
            let g = gaussian_derivatives(-c * w, w);
            // Residuals scaled by V/w and V/w²; c measured in waists from x.
            let f1 = (base[1] - s * v * g[1]) * w / v;
            let f2 = (base[2] - s * v * g[2] - target) * w * w / v;
            let j11 = -g[1] * w;
            let j12 = s * g[2] * w * w;
            let j21 = -g[2] * w * w;
            let j22 = s * g[3] * w * w * w;
            let det = j11 * j22 - j12 * j21;
            if det == 0.0 || !det.is_finite() {
                break;
            }
            let ds = -(f1 * j22 - f2 * j12) / det;
            let dc = -(j11 * f2 - j21 * f1) / det;
            s += ds;
            c += dc.clamp(-0.25, 0.25);
            if ds.abs() < 1e-14 * (1.0 + s.abs()) && dc.abs() < 1e-14 {
                let center = x + c * w;
                let snap = self.finish(s * v, center, guess.x_min)?;
                if (snap.x_min - x).abs() > 1e-9 * w {
                    return Err(Error::InvalidRamp(format!(
                        "sweep target {:.6e} m is not the tracked minimum ({:.6e} m)",
                        x, snap.x_min
                    )));
                }
                return Ok(snap);
            }
        }
        Err(Error::InvalidRamp(format!(
            "no beam setting places a minimum of frequency {:.6e} rad/s at {:.6e} m",
            omega, x
        )))
    }
}

/// Frequency ω(t) and centre x_c(t) of the local harmonic fit.
pub fn effective_harmonic(ramp: &RampProtocol, t: f64) -> Result<(f64, f64)> {
    let total = ramp.total_duration();
    if !(0.0..=total * (1.0 + 1e-12)).contains(&t) {
        return Err(Error::Domain(format!("t = {t:e} s outside the ramp duration {total:e} s")));
    }
    let s = Tracker::new(ramp)?.at(t)?;
    Ok((s.omega, s.x_min))
}

/// Geometry of one transport: the atom starts in the tweezer at `start` and
/// ends in the one at `end`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransportSetup {
    pub mass: f64,
    pub base_trap: BaseTrap,
    pub transport_trap: TransportTrap,
    pub start: f64,
    pub end: f64,
}

/// Trap points derived from a [`TransportSetup`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Landmarks {
    /// Minima of the static potential near the start and end tweezers.
    pub rest_start: f64,
    pub rest_end: f64,
    /// Minima with the beam at full depth over each rest point.
    pub loaded_start: f64,
    pub loaded_end: f64,
    /// Trap frequency at rest and with the beam at full depth.
    pub omega_rest: f64,
    pub omega_loaded: f64,
}

impl TransportSetup {
    /// Two magic tweezers one site apart, transport beam of depth
    /// `depth_ratio` × V_magic with the species' default waists.
    pub fn for_species(species: &SpeciesParams, depth_ratio: f64) -> Self {
        let t = species.trap;
        let base = BaseTrap::new(species.mass, t.magic_frequency, t.magic_waist, vec![0.0, t.site_spacing]);
        let transport = TransportTrap { max_depth: depth_ratio * base.depth, waist: t.transport_waist };
        TransportSetup { mass: species.mass, base_trap: base, transport_trap: transport, start: 0.0, end: t.site_spacing }
    }

    fn ramp(&self, kind: RampKind, segments: Vec<Segment>) -> RampProtocol {
        RampProtocol {
            kind,
            mass: self.mass,
            base_trap: self.base_trap.clone(),
            transport_trap: self.transport_trap,
            segments,
        }
    }

    pub fn landmarks(&self) -> Result<Landmarks> {
        let empty = self.ramp(RampKind::Custom, vec![]);
        let rest = empty.potential(0.0, 0.0);
        let rest_start = rest.minimum_near(self.start)?;
        let rest_end = rest.minimum_near(self.end)?;
        let vg = self.transport_trap.max_depth;
        let ls = empty.potential(vg, rest_start);
        let loaded_start = ls.minimum_near(rest_start)?;
        let le = empty.potential(vg, rest_end);
        let loaded_end = le.minimum_near(rest_end)?;
        Ok(Landmarks {
            rest_start,
            rest_end,
            loaded_start,
            loaded_end,
            omega_rest: (rest.derivatives(rest_start)[2] / self.mass).sqrt(),
            omega_loaded: (ls.derivatives(loaded_start)[2] / self.mass).sqrt(),
        })
    }

    /// Linear depth ramp 0 → V_g over the start tweezer.
    pub fn naive_up(&self, duration: f64) -> Result<RampProtocol> {
        let l = self.landmarks()?;
        let vg = self.transport_trap.max_depth;
        Ok(self.ramp(
            RampKind::Naive,
            vec![Segment { duration, profile: Profile::Linear { depth: [0.0, vg], center: [l.rest_start; 2] } }],
        ))
    }

    /// Constant-velocity beam sweep at depth V_g.
    pub fn naive_sweep(&self, duration: f64) -> Result<RampProtocol> {
        let l = self.landmarks()?;
        let vg = self.transport_trap.max_depth;
        Ok(self.ramp(
            RampKind::Naive,
            vec![Segment { duration, profile: Profile::Linear { depth: [vg; 2], center: [l.rest_start, l.rest_end] } }],
        ))
    }

    /// Naive three-step sequence: ramp up, sweep, ramp down.
    pub fn naive(&self, t_up: f64, t_sweep: f64, t_down: f64) -> Result<RampProtocol> {
        let l = self.landmarks()?;
        let vg = self.transport_trap.max_depth;
        Ok(self.ramp(
            RampKind::Naive,
            vec![
                Segment { duration: t_up, profile: Profile::Linear { depth: [0.0, vg], center: [l.rest_start; 2] } },
                Segment {
                    duration: t_sweep,
                    profile: Profile::Linear { depth: [vg; 2], center: [l.rest_start, l.rest_end] },
                },
                Segment { duration: t_down, profile: Profile::Linear { depth: [vg, 0.0], center: [l.rest_end; 2] } },
            ],
        ))
    }

    /// Locally adiabatic ramp-up over the start tweezer.
    pub fn adiabatic_up(&self, duration: f64) -> Result<RampProtocol> {
        let l = self.landmarks()?;
        Ok(self.ramp(
            RampKind::LocallyAdiabatic,
            vec![Segment {
                duration,
                profile: Profile::FrequencyRamp { omega: [l.omega_rest, l.omega_loaded], center: l.rest_start },
            }],
        ))
    }

    /// Locally adiabatic sweep of the minimum at constant frequency.
    pub fn adiabatic_sweep(&self, duration: f64) -> Result<RampProtocol> {
        let l = self.landmarks()?;
        Ok(self.ramp(
            RampKind::LocallyAdiabatic,
            vec![Segment {
                duration,
                profile: Profile::MinimumSweep { omega: l.omega_loaded, minimum: [l.loaded_start, l.loaded_end] },
            }],
        ))
    }

    /// Locally adiabatic three-step sequence.
    pub fn locally_adiabatic(&self, t_up: f64, t_sweep: f64, t_down: f64) -> Result<RampProtocol> {
        let l = self.landmarks()?;
        Ok(self.ramp(
            RampKind::LocallyAdiabatic,
            vec![
                Segment {
                    duration: t_up,
                    profile: Profile::FrequencyRamp { omega: [l.omega_rest, l.omega_loaded], center: l.rest_start },
                },
                Segment {
                    duration: t_sweep,
                    profile: Profile::MinimumSweep { omega: l.omega_loaded, minimum: [l.loaded_start, l.loaded_end] },
                },
                Segment {
                    duration: t_down,
                    profile: Profile::FrequencyRamp { omega: [l.omega_loaded, l.omega_rest], center: l.rest_end },
                },
            ],
        ))
    }

    /// Locally adiabatic sequence with one adiabaticity ε shared by all
    /// three segments.
    pub fn locally_adiabatic_uniform(&self, epsilon: f64) -> Result<RampProtocol> {
        if !(epsilon > 0.0) {
            return Err(Error::Domain(format!("adiabaticity must be positive, got {epsilon}")));
        }
        let l = self.landmarks()?;
        let t_ramp = (1.0 / l.omega_rest - 1.0 / l.omega_loaded).abs() / epsilon;
        let x_ho = (HBAR / (self.mass * l.omega_loaded)).sqrt();
        let t_sweep = (l.loaded_end - l.loaded_start).abs() / (epsilon * x_ho * l.omega_loaded);
        self.locally_adiabatic(t_ramp, t_sweep, t_ramp)
    }
}
