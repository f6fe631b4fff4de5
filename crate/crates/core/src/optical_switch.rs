//! Spin-dependent light shift and photon scattering from the optical-switch
//! beam, detuned from the intercombination line.

use serde::{Deserialize, Serialize};

use crate::angular::{clebsch_gordan_doubled, doubled};
use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::species::{lamb_dicke, SpeciesParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Polarization {
    SigmaMinus,
    SigmaPlus,
    Pi,
}

impl Polarization {
    pub fn q(self) -> i32 {
        match self {
            Polarization::SigmaMinus => -1,
            Polarization::SigmaPlus => 1,
            Polarization::Pi => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OSBeamConfig {
    pub polarization: Polarization,
    /// Detuning from the F′ = F+1 line, positive to the blue, rad/s.
    pub detuning: f64,
    /// I/I_s
    pub intensity_ratio: f64,
    pub species: SpeciesParams,
}

impl OSBeamConfig {
    pub fn new(species: SpeciesParams, polarization: Polarization, detuning: f64, intensity_ratio: f64) -> Result<Self> {
        let c = OSBeamConfig { polarization, detuning, intensity_ratio, species };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.intensity_ratio > 0.0) || !self.intensity_ratio.is_finite() {
            return Err(Error::Domain(format!("I/I_s must be positive, got {}", self.intensity_ratio)));
        }
        self.detunings().map(|_| ())
    }

    /// Detuning δ_F′ from every excited hyperfine line. Fails on resonance.
    pub fn detunings(&self) -> Result<Vec<(f64, f64)>> {
        self.species
            .hyperfine_offsets()
            .into_iter()
            .map(|(fp, offset)| {
                let d = self.detuning - offset;
                if d.abs() <= 1e-12 * self.detuning.abs().max(offset.abs()) {
                    Err(Error::Domain(format!("beam is resonant with the F' = {fp} line")))
                } else {
                    Ok((fp, d))
                }
            })
            .collect()
    }

    /// Qubit states |↓⟩ = |m_F = −F⟩ and |↑⟩ = |−F+1⟩.
    pub fn qubit_states(&self) -> (f64, f64) {
        let f = self.species.nuclear_spin;
        (-f, -f + 1.0)
    }

    pub fn with_intensity(&self, intensity_ratio: f64) -> Self {
        OSBeamConfig { intensity_ratio, ..self.clone() }
    }
}

/// Rabi frequency with Ω² = (I/I_s) Γ²/2 for unit-normalised coupling
/// coefficients.
pub fn rabi_from_intensity(config: &OSBeamConfig) -> f64 {
    config.species.linewidth * (config.intensity_ratio / 2.0).sqrt()
}

/// ⟨F m; 1 q | F′ m+q⟩, zero where the selection rules forbid the line.
fn coupling(f: f64, m: f64, q: i32, fp: f64) -> Result<f64> {
    let (ff, mm, fpp) = (doubled(f)?, doubled(m)?, doubled(fp)?);
    if mm.abs() > ff || (ff + mm) % 2 != 0 {
        return Err(Error::Domain(format!("|m_F| <= F violated (F = {f}, m_F = {m})")));
    }
    if !(-1..=1).contains(&q) {
        return Ok(0.0);
    }
    Ok(clebsch_gordan_doubled(ff, mm, 2, 2 * q, fpp, mm + 2 * q))
}

/// Σ_F′ weight(F′)/(2δ_F′).
fn line_sum<W>(config: &OSBeamConfig, mut weight: W) -> Result<f64>
where
    W: FnMut(f64) -> Result<f64>,
{
    let mut s = 0.0;
    for (fp, d) in config.detunings()? {
        s += weight(fp)? / (2.0 * d);
    }
    Ok(s)
}

/// Light shift Σ_F′ ħΩ²|C_F′|²/(4δ_F′) of the ground level m_F, J.
pub fn light_shift(config: &OSBeamConfig, m_f: f64) -> Result<f64> {
    let f = config.species.nuclear_spin;
    let q = config.polarization.q();
    let omega = rabi_from_intensity(config);
    Ok(0.5 * HBAR * omega * omega * line_sum(config, |fp| Ok(coupling(f, m_f, q, fp)?.powi(2)))?)
}

/// V(m_down) − V(m_up), J.
pub fn differential_shift(config: &OSBeamConfig, m_down: f64, m_up: f64) -> Result<f64> {
    Ok(light_shift(config, m_down)? - light_shift(config, m_up)?)
}

/// Spin-flip Raman rate from |↑⟩ to |↓⟩: the beam is absorbed from m_up
/// and the photon emitted in whatever polarization returns to m_down.
pub fn raman_rate(config: &OSBeamConfig, m_down: f64, m_up: f64) -> Result<f64> {
    let f = config.species.nuclear_spin;
    let q = config.polarization.q();
    let q_emit = doubled(m_up + q as f64 - m_down)? / 2;
    let omega = rabi_from_intensity(config);
    let s = line_sum(config, |fp| Ok(coupling(f, m_up, q, fp)? * coupling(f, m_down, q_emit, fp)?))?;
    Ok(omega * omega * config.species.linewidth * s * s)
}

/// Elastic scattering that distinguishes the two spin states.
pub fn rayleigh_dephasing_rate(config: &OSBeamConfig, m_down: f64, m_up: f64) -> Result<f64> {
    let f = config.species.nuclear_spin;
    let q = config.polarization.q();
    let omega = rabi_from_intensity(config);
    let s = line_sum(config, |fp| Ok(coupling(f, m_down, q, fp)?.powi(2) - coupling(f, m_up, q, fp)?.powi(2)))?;
    Ok(omega * omega * config.species.linewidth * s * s)
}

/// Total photon scattering rate of the ground level m_F.
pub fn total_scattering_rate(config: &OSBeamConfig, m_f: f64) -> Result<f64> {
    let f = config.species.nuclear_spin;
    let q = config.polarization.q();
    let omega = rabi_from_intensity(config);
    let s = line_sum(config, |fp| Ok(coupling(f, m_f, q, fp)?.powi(2)))?;
    Ok(omega * omega * config.species.linewidth * s * s)
}

/// Light shift and decoherence rates feeding the gate master equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateBundle {
    /// Differential shift V↓ − V↑ at which the rates were evaluated, J.
    pub v_os: f64,
    pub gamma_raman: f64,
    pub gamma_el: f64,
    pub gamma_up: f64,
    pub gamma_down: f64,
    pub eta2_gamma_up: f64,
    pub eta2_gamma_down: f64,
}

impl RateBundle {
    pub fn validate(&self) -> Result<()> {
        let rates = [
            ("gamma_raman", self.gamma_raman),
            ("gamma_el", self.gamma_el),
            ("gamma_up", self.gamma_up),
            ("gamma_down", self.gamma_down),
            ("eta2_gamma_up", self.eta2_gamma_up),
            ("eta2_gamma_down", self.eta2_gamma_down),
        ];
        for (name, r) in rates {
            if !(r >= 0.0) || !r.is_finite() {
                return Err(Error::Domain(format!("{name} must be a non-negative rate, got {r}")));
            }
        }
        if self.gamma_up > 0.0 && self.gamma_raman > self.gamma_up * (1.0 + 1e-12) {
            return Err(Error::Domain("Raman rate exceeds the total scattering rate of |up>".into()));
        }
        if !self.v_os.is_finite() {
            return Err(Error::Domain("V_OS must be finite".into()));
        }
        Ok(())
    }

    /// All rates with the shift V_OS rescaled by the same intensity factor.
    pub fn scaled_to(&self, v_os: f64) -> RateBundle {
        let k = if self.v_os == 0.0 { 0.0 } else { (v_os / self.v_os).abs() };
        RateBundle {
            v_os,
            gamma_raman: self.gamma_raman * k,
            gamma_el: self.gamma_el * k,
            gamma_up: self.gamma_up * k,
            gamma_down: self.gamma_down * k,
            eta2_gamma_up: self.eta2_gamma_up * k,
            eta2_gamma_down: self.eta2_gamma_down * k,
        }
    }

    /// Rates at a fraction `factor` of the reference intensity.
    pub fn times(&self, factor: f64) -> RateBundle {
        self.scaled_to(self.v_os * factor)
    }

    pub fn zero() -> RateBundle {
        RateBundle {
            v_os: 0.0,
            gamma_raman: 0.0,
            gamma_el: 0.0,
            gamma_up: 0.0,
            gamma_down: 0.0,
            eta2_gamma_up: 0.0,
            eta2_gamma_down: 0.0,
        }
    }
}

/// Evaluates every rate for the qubit pair of `config`, with motional
/// heating for a trap of angular frequency `trap_frequency`.
pub fn rate_bundle(config: &OSBeamConfig, trap_frequency: f64) -> Result<RateBundle> {
    config.validate()?;
    let (down, up) = config.qubit_states();
    let eta = lamb_dicke(&config.species, trap_frequency, config.species.intercombination_wavelength)?;
    let gamma_up = total_scattering_rate(config, up)?;
    let gamma_down = total_scattering_rate(config, down)?;
    let bundle = RateBundle {
        v_os: differential_shift(config, down, up)?,
        gamma_raman: raman_rate(config, down, up)?,
        gamma_el: rayleigh_dephasing_rate(config, down, up)?,
        gamma_up,
        gamma_down,
        eta2_gamma_up: eta * eta * gamma_up,
        eta2_gamma_down: eta * eta * gamma_down,
    };
    bundle.validate()?;
    Ok(bundle)
}

/// I/I_s giving a differential shift of magnitude `v_os` (J).
pub fn intensity_for_shift(config: &OSBeamConfig, v_os: f64) -> Result<f64> {
    let (down, up) = config.qubit_states();
    let unit = differential_shift(&config.with_intensity(1.0), down, up)?;
    if unit == 0.0 {
        return Err(Error::Domain("this polarization produces no differential shift".into()));
    }
    Ok((v_os / unit).abs())
}
