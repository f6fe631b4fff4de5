//! Piecewise integration of the gate master equation.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::hamiltonian::{build_hamiltonian, build_hamiltonian_12, GateEnergies};
use super::lindblad::{apply_commutator, apply_lindblad, LindbladRates};
use super::GateDensityMatrix;
use crate::error::{Error, Result};
use crate::ode::Dop853;
use crate::optical_switch::RateBundle;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduleSegment {
    /// s
    pub duration: f64,
    /// Optical-switch shift at the start and end, linear in between, J.
    pub v_os: [f64; 2],
    pub energies: GateEnergies,
    /// Infidelity charged when the segment ends.
    pub transport_penalty: f64,
}

impl ScheduleSegment {
    pub fn constant(duration: f64, v_os: f64, energies: GateEnergies) -> Self {
        ScheduleSegment { duration, v_os: [v_os; 2], energies, transport_penalty: 0.0 }
    }

    pub fn with_penalty(mut self, p: f64) -> Self {
        self.transport_penalty = p;
        self
    }

    fn v_os_at(&self, tau: f64) -> f64 {
        let f = if self.duration > 0.0 { tau / self.duration } else { 0.0 };
        self.v_os[0] + (self.v_os[1] - self.v_os[0]) * f
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GateSchedule {
    pub segments: Vec<ScheduleSegment>,
}

impl GateSchedule {
    pub fn validate(&self) -> Result<()> {
        for (i, s) in self.segments.iter().enumerate() {
            if !(s.duration > 0.0) || !s.duration.is_finite() {
                return Err(Error::Domain(format!("segment {i}: duration must be positive, got {}", s.duration)));
            }
            if !(0.0..1.0).contains(&s.transport_penalty) {
                return Err(Error::Domain(format!(
                    "segment {i}: transport penalty must lie in [0, 1), got {}",
                    s.transport_penalty
                )));
            }
            let e = s.energies;
            if ![e.v_ex, e.v_d, e.u_minus, s.v_os[0], s.v_os[1]].iter().all(|x| x.is_finite()) {
                return Err(Error::Domain(format!("segment {i}: energies must be finite")));
            }
        }
        Ok(())
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    /// Product of (1 − penalty) over all segments.
    pub fn penalty_factor(&self) -> f64 {
        self.segments.iter().map(|s| 1.0 - s.transport_penalty).product()
    }

    pub fn then(mut self, other: &GateSchedule) -> GateSchedule {
        self.segments.extend(other.segments.iter().copied());
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub rho: GateDensityMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Samples at most `dt_max` apart plus every segment boundary.
    pub points: Vec<TrajectoryPoint>,
    /// Accumulated transport fidelity factor.
    pub penalty_factor: f64,
}

impl Trajectory {
    pub fn last(&self) -> &GateDensityMatrix {
        &self.points.last().expect("trajectory always holds the initial state").rho
    }
}

/// Integration settings shared by all gate evolutions.
#[derive(Debug, Clone, Copy)]
pub struct Engine {
    pub rtol: f64,
    pub atol: f64,
    /// Verify Hermiticity, positivity and trace monotonicity while
    /// integrating.
    pub check: bool,
}

impl Default for Engine {
    fn default() -> Self {
        Engine { rtol: 1e-10, atol: 1e-13, check: true }
    }
}

fn hamiltonian(dim: usize, e: GateEnergies, v_os: f64) -> Vec<f64> {
    let h: DMatrix<f64> = if dim == 4 { build_hamiltonian(e, v_os) } else { build_hamiltonian_12(e, v_os) };
    // Row-major copy.
    h.transpose().as_slice().to_vec()
}

fn to_real(rho: &DMatrix<Complex64>) -> Vec<f64> {
    let n = rho.nrows();
    let mut y = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            y.push(rho[(i, j)].re);
            y.push(rho[(i, j)].im);
        }
    }
    y
}

fn from_real(n: usize, y: &[f64]) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |i, j| Complex64::new(y[2 * (i * n + j)], y[2 * (i * n + j) + 1]))
}

impl Engine {
    /// Evolves `rho` through one segment, calling `sample` at the segment
    /// end and at least every `dt_max`.
    pub fn segment<S>(
        &self,
        rho: &GateDensityMatrix,
        seg: &ScheduleSegment,
        rates: &RateBundle,
        dt_max: f64,
        mut sample: S,
    ) -> Result<GateDensityMatrix>
    where
        S: FnMut(f64, &GateDensityMatrix) -> Result<()>,
    {
        let n = rho.dim();
        let linear = seg.v_os[0] == seg.v_os[1];
        let fixed_h = hamiltonian(n, seg.energies, seg.v_os[0]);
        let fixed_l = LindbladRates::at_shift(rates, seg.v_os[0]);
        let mut buf = vec![Complex64::new(0.0, 0.0); n * n];
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        let rhs = |t: f64, y: &[f64], dy: &mut [f64]| -> Result<()> {
            for (k, z) in buf.iter_mut().enumerate() {
                *z = Complex64::new(y[2 * k], y[2 * k + 1]);
            }
            out.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
            if linear {
                apply_commutator(n, &fixed_h, &buf, &mut out);
                apply_lindblad(n, &fixed_l, &buf, &mut out);
            } else {
                let v = seg.v_os_at(t);
                apply_commutator(n, &hamiltonian(n, seg.energies, v), &buf, &mut out);
                apply_lindblad(n, &LindbladRates::at_shift(rates, v), &buf, &mut out);
            }
            for (k, z) in out.iter().enumerate() {
                dy[2 * k] = z.re;
                dy[2 * k + 1] = z.im;
            }
            Ok(())
        };
        let solver = Dop853::new(self.rtol, self.atol).with_max_step(dt_max);
        let mut y = to_real(&rho.matrix);
        let mut last_trace = rho.trace();
        let check = self.check;
        let mut observe = |t: f64, y: &[f64]| -> Result<()> {
            let tr: f64 = (0..n).map(|i| y[2 * (i * n + i)]).sum();
            if check && tr > last_trace + 1e-12 {
                return Err(Error::Integration { t, reason: format!("trace increased from {last_trace} to {tr}") });
            }
            last_trace = tr;
            let m = GateDensityMatrix { matrix: from_real(n, y) };
            if check {
                m.check().map_err(|e| Error::Integration { t, reason: e.to_string() })?;
            }
            sample(t, &m)
        };
        solver.integrate_observed(rhs, 0.0, seg.duration, &mut y, &mut observe)?;
        let mut end = GateDensityMatrix { matrix: from_real(n, &y) };
        end.symmetrize();
        Ok(end)
    }

    /// Evolves through a whole schedule, recording the trajectory.
    pub fn run(
        &self,
        rho0: &GateDensityMatrix,
        schedule: &GateSchedule,
        rates: &RateBundle,
        dt_max: f64,
    ) -> Result<Trajectory> {
        schedule.validate()?;
        rates.validate()?;
        if !(dt_max > 0.0) {
            return Err(Error::Domain(format!("dt_max must be positive, got {dt_max}")));
        }
        if self.check {
            rho0.check()?;
        }
        let mut points = vec![TrajectoryPoint { t: 0.0, rho: rho0.clone() }];
        let mut rho = rho0.clone();
        let mut t0 = 0.0;
        for seg in &schedule.segments {
            let mut next_sample = dt_max;
            rho = self.segment(&rho, seg, rates, dt_max, |t, m| {
                if t >= next_sample * (1.0 - 1e-12) && t < seg.duration {
                    points.push(TrajectoryPoint { t: t0 + t, rho: m.clone() });
                    next_sample = t + dt_max;
                }
                Ok(())
            })?;
            t0 += seg.duration;
            points.push(TrajectoryPoint { t: t0, rho: rho.clone() });
        }
        Ok(Trajectory { points, penalty_factor: schedule.penalty_factor() })
    }

    /// Final state only.
    pub fn propagate(&self, rho0: &GateDensityMatrix, schedule: &GateSchedule, rates: &RateBundle) -> Result<GateDensityMatrix> {
        let mut rho = rho0.clone();
        for seg in &schedule.segments {
            rho = self.segment(&rho, seg, rates, f64::INFINITY, |_, _| Ok(()))?;
        }
        Ok(rho)
    }
}

/// Integrates ∂ρ/∂t = −(i/ħ)[H, ρ] + L(ρ) over the schedule. Rates follow
/// the instantaneous shift: `rates` holds them at `rates.v_os`, and they
/// vanish while the switch is off.
pub fn evolve_master(
    rho0: &GateDensityMatrix,
    schedule: &GateSchedule,
    rates: &RateBundle,
    dt_max: f64,
) -> Result<Trajectory> {
    Engine::default().run(rho0, schedule, rates, dt_max)
}
