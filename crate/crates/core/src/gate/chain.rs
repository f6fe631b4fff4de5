//! Chains of SWAP gates interleaved with transport, and the motional
//! extension for imperfectly cooled atoms.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::engine::{Engine, GateSchedule, ScheduleSegment};
use super::hamiltonian::GateEnergies;
use super::{spin_ket, GateDensityMatrix, DOWN_UP, MOTION_ANTISYMMETRIC, MOTION_GROUND, MOTION_SYMMETRIC, UP_DOWN};
use crate::constants::{h_khz, H};
use crate::error::{Error, Result};
use crate::optical_switch::RateBundle;

/// How consecutive gates are joined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainMode {
    /// The density matrix is carried over unchanged.
    Coherent,
    /// Each gate meets a new partner atom, so coherences between spin
    /// configurations left by the previous gate are dropped.
    FreshPartner,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwapChainParams {
    pub energies: GateEnergies,
    /// Optical-switch shift while the switch is on, J.
    pub v_os: f64,
    /// Rates at `rates.v_os`; rescaled with the intensity for other shifts.
    pub rates: RateBundle,
    /// One transport leg, s.
    pub t_transport: f64,
    /// One switch-on hold next to the exchange window, s.
    pub t_down: f64,
    /// Infidelity of one transport leg.
    pub transport_penalty: f64,
    pub mode: ChainMode,
}

/// Γ↓/Γ↑ for ⁸⁷Sr with the switch 5 GHz blue of F′ = 11/2.
pub const SR_DOWN_UP_SCATTERING_RATIO: f64 = 0.865;

impl SwapChainParams {
    /// ⁸⁷Sr operating point: V_OS/h = 300 kHz, V_ex/h = 6 kHz,
    /// V_d/h = 15 kHz, Γ↑↓ = 1 s⁻¹, Γ_el = 0.1 s⁻¹, η²Γ↑ = 6.3 s⁻¹, two
    /// 6 μs transports and two 3 μs holds per gate, 10⁻³ per transport.
    pub fn strontium() -> Self {
        let v_os = h_khz(300.0);
        let eta2 = 0.0469;
        SwapChainParams {
            energies: GateEnergies::from_exchange(h_khz(6.0), h_khz(15.0)),
            v_os,
            rates: RateBundle {
                v_os,
                gamma_raman: 1.0,
                gamma_el: 0.1,
                gamma_up: 6.3 / eta2,
                gamma_down: 6.3 * SR_DOWN_UP_SCATTERING_RATIO / eta2,
                eta2_gamma_up: 6.3,
                eta2_gamma_down: 6.3 * SR_DOWN_UP_SCATTERING_RATIO,
            },
            t_transport: 6e-6,
            t_down: 3e-6,
            transport_penalty: 1e-3,
            mode: ChainMode::FreshPartner,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.energies.v_ex > 0.0) {
            return Err(Error::Domain("V_ex must be positive".into()));
        }
        if !(self.t_transport >= 0.0 && self.t_down >= 0.0) {
            return Err(Error::Domain("transport and hold times must be non-negative".into()));
        }
        if !(0.0..1.0).contains(&self.transport_penalty) {
            return Err(Error::Domain("transport penalty must lie in [0, 1)".into()));
        }
        self.rates.validate()
    }

    /// h/(4V_ex)
    pub fn swap_time(&self) -> f64 {
        H / (4.0 * self.energies.v_ex)
    }

    /// Hold, exchange window with the switch off, hold.
    pub fn swap_schedule(&self) -> GateSchedule {
        let mut segments = Vec::new();
        if self.t_down > 0.0 {
            segments.push(ScheduleSegment::constant(self.t_down, self.v_os, self.energies));
        }
        segments.push(ScheduleSegment::constant(self.swap_time(), 0.0, self.energies));
        if self.t_down > 0.0 {
            segments.push(ScheduleSegment::constant(self.t_down, self.v_os, self.energies));
        }
        GateSchedule { segments }
    }

    /// Transport in, [`swap_schedule`](Self::swap_schedule), transport out.
    pub fn gate_schedule(&self) -> GateSchedule {
        let leg = || {
            ScheduleSegment::constant(self.t_transport, self.v_os, GateEnergies::ZERO)
                .with_penalty(self.transport_penalty)
        };
        let mut segments = Vec::new();
        if self.t_transport > 0.0 {
            segments.push(leg());
        }
        segments.extend(self.swap_schedule().segments);
        if self.t_transport > 0.0 {
            segments.push(leg());
        }
        GateSchedule { segments }
    }

    fn penalty_per_gate(&self) -> f64 {
        if self.t_transport > 0.0 {
            (1.0 - self.transport_penalty).powi(2)
        } else {
            1.0
        }
    }
}

/// Ideal image of |g↓,e↑⟩ after n SWAPs.
pub fn swap_target(n: usize) -> usize {
    if n % 2 == 1 {
        UP_DOWN
    } else {
        DOWN_UP
    }
}

/// States after each of `n` gates, starting from `rho0`.
pub fn evolve_chain(rho0: &GateDensityMatrix, n: usize, params: &SwapChainParams) -> Result<Vec<GateDensityMatrix>> {
    params.validate()?;
    let engine = Engine::default();
    let schedule = params.gate_schedule();
    schedule.validate()?;
    let mut out = Vec::with_capacity(n);
    let mut rho = rho0.clone();
    for _ in 0..n {
        if params.mode == ChainMode::FreshPartner {
            rho = rho.dephased();
        }
        rho = engine.propagate(&rho, &schedule, &params.rates)?;
        out.push(rho.clone());
    }
    Ok(out)
}

/// Error of one SWAP with its switch-on holds, without transport.
pub fn single_swap_error(params: &SwapChainParams) -> Result<f64> {
    params.validate()?;
    let rho0 = GateDensityMatrix::basis_state(4, DOWN_UP)?;
    let rho = Engine::default().propagate(&rho0, &params.swap_schedule(), &params.rates)?;
    Ok(1.0 - rho.spin_fidelity(&spin_ket(UP_DOWN)))
}

/// (N, 1 − F_N) for N = 0..=n_max, transport penalties included.
pub fn repeated_swap_curve(n_max: usize, params: &SwapChainParams) -> Result<Vec<(usize, f64)>> {
    let rho0 = GateDensityMatrix::basis_state(4, DOWN_UP)?;
    let states = evolve_chain(&rho0, n_max, params)?;
    let mut out = vec![(0, 0.0)];
    for (i, rho) in states.iter().enumerate() {
        let n = i + 1;
        let f = rho.spin_fidelity(&spin_ket(swap_target(n))) * params.penalty_per_gate().powi(n as i32);
        out.push((n, 1.0 - f));
    }
    Ok(out)
}

/// Smallest N whose infidelity reaches `threshold`.
pub fn crossing(curve: &[(usize, f64)], threshold: f64) -> Option<usize> {
    curve.iter().find(|(_, e)| *e >= threshold).map(|(n, _)| *n)
}

/// (V_OS, infidelity after n gates) with the rates following the intensity
/// needed for each shift.
pub fn optimal_vos_scan(n: usize, v_os: &[f64], params: &SwapChainParams) -> Result<Vec<(f64, f64)>> {
    if v_os.iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::Domain("V_OS values must be non-negative".into()));
    }
    v_os.par_iter()
        .map(|&v| {
            let p = SwapChainParams { v_os: v, ..*params };
            let curve = repeated_swap_curve(n, &p)?;
            Ok((v, curve[n].1))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoolingPoint {
    pub p: f64,
    /// With motion traced out, transport penalties included.
    pub infidelity: f64,
    /// Population of the target in the motional ground block only.
    pub ground_block_fidelity: f64,
    /// Populations of {00, 01_s, 01_a}.
    pub motional_populations: [f64; 3],
}

/// (1−p)|00⟩⟨00| + (p/2)(|01_s⟩⟨01_s| + |01_a⟩⟨01_a|), spin |g↓,e↑⟩.
pub fn thermal_initial_state(p: f64) -> Result<GateDensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p must lie in [0, 1], got {p}")));
    }
    let mut m = DMatrix::zeros(12, 12);
    m[(DOWN_UP, DOWN_UP)] = Complex64::new(1.0 - p, 0.0);
    m[(4 + DOWN_UP, 4 + DOWN_UP)] = Complex64::new(p / 2.0, 0.0);
    m[(8 + DOWN_UP, 8 + DOWN_UP)] = Complex64::new(p / 2.0, 0.0);
    GateDensityMatrix::new(m)
}

/// Infidelity after `n_gates` gates for each initial excitation p.
pub fn imperfect_cooling_curve(p_values: &[f64], n_gates: usize, params: &SwapChainParams) -> Result<Vec<CoolingPoint>> {
    if n_gates == 0 {
        return Err(Error::Domain("at least one gate is needed".into()));
    }
    p_values
        .par_iter()
        .map(|&p| {
            let rho0 = thermal_initial_state(p)?;
            let states = evolve_chain(&rho0, n_gates, params)?;
            let rho = states.last().expect("n_gates > 0");
            let target = swap_target(n_gates);
            let penalty = params.penalty_per_gate().powi(n_gates as i32);
            Ok(CoolingPoint {
                p,
                infidelity: 1.0 - rho.spin_fidelity(&spin_ket(target)) * penalty,
                ground_block_fidelity: rho.motional_block(MOTION_GROUND)[(target, target)].re * penalty,
                motional_populations: [
                    rho.motional_population(MOTION_GROUND),
                    rho.motional_population(MOTION_SYMMETRIC),
                    rho.motional_population(MOTION_ANTISYMMETRIC),
                ],
            })
        })
        .collect()
}
