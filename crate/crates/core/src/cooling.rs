//! Resolved-sideband cooling estimates on a narrow line, optionally a
//! quench-broadened clock line.

use serde::{Deserialize, Serialize};

use crate::constants::TWO_PI;
use crate::error::{Error, Result};
use crate::species::SpeciesParams;

/// Not captured by the rate model below.
pub const CAVEAT: &str = "heating from the anti-trapped 3P1 state during cooling is not modelled";

/// Coupling of the clock state to a short-lived auxiliary state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quench {
    /// rad/s
    pub omega_aux: f64,
    /// rad/s
    pub delta_aux: f64,
    /// Decay rate of the auxiliary state, s⁻¹.
    pub gamma_1aux: f64,
    /// Decay rate of the intermediate state it feeds, s⁻¹.
    pub gamma_2aux: f64,
    /// Natural width of the clock line, s⁻¹; negligible in practice.
    pub gamma_nat: f64,
}

impl Quench {
    /// ³D₁ quench with 1.06 μs and 300 ns cascade lifetimes.
    pub fn ytterbium(omega_aux: f64, delta_aux: f64) -> Self {
        Quench { omega_aux, delta_aux, gamma_1aux: 1.0 / 1.06e-6, gamma_2aux: 1.0 / 300e-9, gamma_nat: 0.0 }
    }

    /// (Γ_1aux⁻¹ + Γ_2aux⁻¹)⁻¹
    pub fn gamma_aux(&self) -> f64 {
        1.0 / (1.0 / self.gamma_1aux + 1.0 / self.gamma_2aux)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoolingConfig {
    pub species: SpeciesParams,
    /// rad/s
    pub omega_tw: f64,
    /// Sideband Rabi frequency, rad/s.
    pub omega_sb: f64,
    pub quench: Option<Quench>,
}

impl CoolingConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega_tw > 0.0) || !self.omega_tw.is_finite() {
            return Err(Error::Domain(format!("trap frequency must be positive, got {}", self.omega_tw)));
        }
        if !(self.omega_sb >= 0.0) {
            return Err(Error::Domain("sideband Rabi frequency must be non-negative".into()));
        }
        if let Some(q) = &self.quench {
            if !(q.gamma_1aux > 0.0 && q.gamma_2aux > 0.0 && q.gamma_aux() > 0.0) {
                return Err(Error::Domain("auxiliary decay rates must be positive".into()));
            }
            if !(q.gamma_nat >= 0.0) || !(q.omega_aux >= 0.0) {
                return Err(Error::Domain("quench coupling and natural width must be non-negative".into()));
            }
        }
        Ok(())
    }

    /// Linewidth of the cooling transition: Γ_eff when quenched, otherwise
    /// the intercombination linewidth.
    pub fn cooling_linewidth(&self) -> Result<f64> {
        match &self.quench {
            Some(_) => gamma_eff(self),
            None => Ok(self.species.linewidth),
        }
    }
}

/// Ω_aux² Γ_aux / ((Γ_nat + Γ_1aux)² + 4Δ_aux²)
pub fn gamma_eff(config: &CoolingConfig) -> Result<f64> {
    config.validate()?;
    let q = config
        .quench
        .as_ref()
        .ok_or_else(|| Error::Domain("effective scattering rate needs a quench configuration".into()))?;
    let denom = (q.gamma_nat + q.gamma_1aux).powi(2) + 4.0 * q.delta_aux * q.delta_aux;
    Ok(q.omega_aux * q.omega_aux / denom * q.gamma_aux())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoolingFigures {
    /// Effective linewidth Γ_c, s⁻¹.
    pub gamma_c: f64,
    /// Cooling rate, quanta/s.
    pub rate: f64,
    pub n_bar_ss: f64,
    /// Ground-state population 1/(1 + n̄).
    pub n0: f64,
    pub sideband_resolved: bool,
    pub warning: Option<String>,
}

/// Two-level rate model on the red sideband: n̄ = (Γ_c/2ω)², rate
/// (Γ_c/2)·s/(1+s) with s = 2Ω_sb²/Γ_c².
pub fn cooling_figures(config: &CoolingConfig) -> Result<CoolingFigures> {
    config.validate()?;
    let gamma_c = config.cooling_linewidth()?;
    let resolved = gamma_c < config.omega_tw;
    let n_bar_ss = (gamma_c / (2.0 * config.omega_tw)).powi(2);
    let rate = if gamma_c > 0.0 {
        let s = 2.0 * config.omega_sb * config.omega_sb / (gamma_c * gamma_c);
        0.5 * gamma_c * s / (1.0 + s)
    } else {
        0.0
    };
    let warning = (!resolved).then(|| {
        format!(
            "cooling line ({:.3} kHz) is not resolved against the trap frequency ({:.3} kHz)",
            gamma_c / TWO_PI / 1e3,
            config.omega_tw / TWO_PI / 1e3
        )
    });
    Ok(CoolingFigures { gamma_c, rate, n_bar_ss, n0: 1.0 / (1.0 + n_bar_ss), sideband_resolved: resolved, warning })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::khz;
    use crate::species::Species;
    use proptest::prelude::*;

    fn yb(omega_aux: f64) -> CoolingConfig {
        CoolingConfig {
            species: Species::Yb173.params(),
            omega_tw: khz(103.0),
            omega_sb: khz(20.0),
            quench: Some(Quench::ytterbium(omega_aux, TWO_PI * 10e6)),
        }
    }

    #[test]
    fn no_quench_light_no_scattering() {
        assert_eq!(gamma_eff(&yb(0.0)).unwrap(), 0.0);
        let f = cooling_figures(&yb(0.0)).unwrap();
        assert_eq!(f.n0, 1.0);
        assert_eq!(f.rate, 0.0);
    }

    #[test]
    fn far_detuned_limit() {
        let c = yb(TWO_PI * 10e6);
        let q = c.quench.unwrap();
        let full = gamma_eff(&c).unwrap();
        let approx = q.gamma_aux() * q.omega_aux.powi(2) / (4.0 * q.delta_aux.powi(2));
        assert!((full / approx - 1.0).abs() < 1e-3);
        assert!((full / (q.gamma_aux() / 4.0) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn inverse_square_in_detuning() {
        let mut c = yb(TWO_PI * 1e6);
        c.quench.as_mut().unwrap().delta_aux = TWO_PI * 1e9;
        let a = gamma_eff(&c).unwrap();
        c.quench.as_mut().unwrap().delta_aux *= 2.0;
        let b = gamma_eff(&c).unwrap();
        assert!((a / b / 4.0 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn ground_state_populations() {
        let f = cooling_figures(&yb(TWO_PI * 10e6)).unwrap();
        assert!(f.sideband_resolved);
        assert!((f.n0 - 0.980).abs() < 0.002, "{}", f.n0);
        let sr = CoolingConfig { species: Species::Sr87.params(), omega_tw: khz(104.0), omega_sb: khz(20.0), quench: None };
        let f = cooling_figures(&sr).unwrap();
        assert!(f.n0 > 0.998);
        assert!(f.rate > 1e4 && f.rate < 3e4, "{}", f.rate);
    }

    #[test]
    fn unresolved_regime_warns() {
        let sr = CoolingConfig { species: Species::Sr87.params(), omega_tw: khz(5.0), omega_sb: khz(20.0), quench: None };
        let f = cooling_figures(&sr).unwrap();
        assert!(!f.sideband_resolved);
        assert!(f.warning.unwrap().contains("not resolved"));
    }

    #[test]
    fn invalid_configs() {
        let mut c = yb(1.0);
        c.omega_tw = 0.0;
        assert!(cooling_figures(&c).is_err());
        let mut c = yb(1.0);
        c.quench = None;
        assert!(gamma_eff(&c).is_err());
    }

    proptest! {
        #[test]
        fn occupation_monotone(g in 1e2f64..1e6, k in 1.01f64..3.0, w in 1e5f64..1e7) {
            let mut sp = Species::Sr87.params();
            sp.linewidth = g;
            let base = CoolingConfig { species: sp.clone(), omega_tw: w, omega_sb: 1e5, quench: None };
            let n = cooling_figures(&base).unwrap().n_bar_ss;
            let mut wider = base.clone();
            wider.species.linewidth = g * k;
            prop_assert!(cooling_figures(&wider).unwrap().n_bar_ss > n);
            let stiffer = CoolingConfig { omega_tw: w * k, ..base };
            prop_assert!(cooling_figures(&stiffer).unwrap().n_bar_ss < n);
        }
    }
}
