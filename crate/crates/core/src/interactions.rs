//! Contact interactions of a g and an e atom sharing one isotropic tweezer.

use serde::{Deserialize, Serialize};

use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::special::{digamma, gamma};
use crate::species::SpeciesParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// Continuously connected to the non-interacting E = 3/2 ħω.
    LowestRepulsive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Busch,
    Perturbative,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "busch" => Ok(Method::Busch),
            "perturbative" => Ok(Method::Perturbative),
            _ => Err(Error::Domain(format!("unknown method '{s}', expected one of {{busch, perturbative}}"))),
        }
    }
}

/// Default a/a_tw below which first-order perturbation theory is trusted.
pub const DEFAULT_PERTURBATIVE_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeFlags {
    pub singlet_perturbative: bool,
    pub triplet_perturbative: bool,
}

/// Singlet/triplet energies and the derived direct and exchange terms, J.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InteractionEnergies {
    pub u_minus: f64,
    pub u_plus: f64,
    pub v_ex: f64,
    pub v_d: f64,
    /// rad/s
    pub omega_tw: f64,
    /// Relative-motion oscillator length, m.
    pub a_tw: f64,
    pub regime_flags: RegimeFlags,
}

impl InteractionEnergies {
    pub fn from_channels(u_minus: f64, u_plus: f64, omega_tw: f64, a_tw: f64, flags: RegimeFlags) -> Self {
        InteractionEnergies {
            u_minus,
            u_plus,
            v_ex: (u_plus - u_minus) / 2.0,
            v_d: (u_plus + u_minus) / 2.0,
            omega_tw,
            a_tw,
            regime_flags: flags,
        }
    }
}

/// √(ħ/(μω)) with μ = m/2.
pub fn relative_length(mass: f64, omega_tw: f64) -> f64 {
    (2.0 * HBAR / (mass * omega_tw)).sqrt()
}

/// Γ(−E/2 + 1/4) / (√2 Γ(−E/2 + 3/4)) as a function of U = E − 3/2, and
/// its derivative. Increases from 0 at U = 0 to +∞ at U = 1.
fn inverse_ratio(u: f64) -> (f64, f64) {
    let x = -u / 2.0;
    let y = x - 0.5;
    let f = gamma(y) / (std::f64::consts::SQRT_2 * gamma(x));
    (f, -0.5 * f * (digamma(y) - digamma(x)))
}

/// Relative-motion energy E (units of ħω) solving
/// √2 Γ(−E/2 + 3/4)/Γ(−E/2 + 1/4) = a_tw/a on the chosen branch.
pub fn busch_energy(a_over_atw: f64, branch: Branch) -> Result<f64> {
    let Branch::LowestRepulsive = branch;
    if !(a_over_atw >= 0.0) || !a_over_atw.is_finite() {
        return Err(Error::Domain(format!("a/a_tw must be finite and non-negative, got {a_over_atw}")));
    }
    if a_over_atw == 0.0 {
        return Ok(1.5);
    }
    let target = a_over_atw;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    // Bisect until the bracket is narrow relative to its upper end.
    for _ in 0..2000 {
        if hi - lo <= 1e-3 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let (f, _) = inverse_ratio(mid);
        if f < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut u = 0.5 * (lo + hi);
    for _ in 0..100 {
        let (f, df) = inverse_ratio(u);
        let g = f - target;
        if g < 0.0 {
            lo = u;
        } else {
            hi = u;
        }
        let mut next = u - g / df;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - u).abs() <= 1e-15 * u.max(1e-300) || hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(1.5 + next);
        }
        u = next;
    }
    let (f, _) = inverse_ratio(u);
    if (f - target).abs() <= 1e-10 * target {
        return Ok(1.5 + u);
    }
    Err(Error::Root(format!("no convergence for a/a_tw = {a_over_atw}")))
}

/// First-order shift √(2/π) ħω a/a_rel, J.
pub fn perturbative_energy(a: f64, omega_tw: f64, reduced_mass: f64) -> Result<f64> {
    if !(a >= 0.0) {
        return Err(Error::Domain(format!("scattering length must be non-negative, got {a}")));
    }
    if !(omega_tw > 0.0 && reduced_mass > 0.0) {
        return Err(Error::Domain("trap frequency and reduced mass must be positive".into()));
    }
    let a_rel = (HBAR / (reduced_mass * omega_tw)).sqrt();
    Ok((2.0 / std::f64::consts::PI).sqrt() * HBAR * omega_tw * a / a_rel)
}

pub fn exchange_energies(species: &SpeciesParams, omega_tw: f64, method: Method) -> Result<InteractionEnergies> {
    exchange_energies_with(species, omega_tw, method, DEFAULT_PERTURBATIVE_THRESHOLD)
}

/// Like [`exchange_energies`] with an explicit a/a_tw regime threshold.
pub fn exchange_energies_with(
    species: &SpeciesParams,
    omega_tw: f64,
    method: Method,
    threshold: f64,
) -> Result<InteractionEnergies> {
    if !(omega_tw > 0.0) || !omega_tw.is_finite() {
        return Err(Error::Domain(format!("trap frequency must be positive, got {omega_tw}")));
    }
    let (a_minus, a_plus) = species.scattering_lengths_m();
    energies_for_lengths(species.mass, a_minus, a_plus, omega_tw, method, threshold)
}

/// Energies for arbitrary singlet/triplet lengths (m).
pub fn energies_for_lengths(
    mass: f64,
    a_minus: f64,
    a_plus: f64,
    omega_tw: f64,
    method: Method,
    threshold: f64,
) -> Result<InteractionEnergies> {
    let a_tw = relative_length(mass, omega_tw);
    let channel = |a: f64| -> Result<f64> {
        match method {
            Method::Busch => Ok((busch_energy(a / a_tw, Branch::LowestRepulsive)? - 1.5) * HBAR * omega_tw),
            Method::Perturbative => perturbative_energy(a, omega_tw, mass / 2.0),
        }
    };
    let flags = RegimeFlags {
        singlet_perturbative: a_minus / a_tw < threshold,
        triplet_perturbative: a_plus / a_tw < threshold,
    };
    Ok(InteractionEnergies::from_channels(channel(a_minus)?, channel(a_plus)?, omega_tw, a_tw, flags))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{khz, H};
    use crate::species::Species;
    use proptest::prelude::*;

    fn pert(x: f64) -> f64 {
        (2.0 / std::f64::consts::PI).sqrt() * x
    }

    #[test]
    fn zero_length_is_non_interacting() {
        assert_eq!(busch_energy(0.0, Branch::LowestRepulsive).unwrap(), 1.5);
    }

    #[test]
    fn root_satisfies_the_relation() {
        for x in [1e-6, 0.01, 0.3, 2.0, 50.0] {
            let e = busch_energy(x, Branch::LowestRepulsive).unwrap();
            let lhs = std::f64::consts::SQRT_2 * gamma(-e / 2.0 + 0.75) / gamma(-e / 2.0 + 0.25);
            assert!((lhs * x - 1.0).abs() < 1e-9, "x = {x}: {lhs}");
        }
    }

    #[test]
    fn small_length_matches_first_order() {
        let u = busch_energy(0.01, Branch::LowestRepulsive).unwrap() - 1.5;
        assert!(((u - pert(0.01)) / pert(0.01)).abs() < 0.01);
        for x in [0.001, 0.01, 0.04] {
            let u = busch_energy(x, Branch::LowestRepulsive).unwrap() - 1.5;
            assert!(((u - pert(x)) / pert(x)).abs() < 0.05);
        }
    }

    #[test]
    fn first_order_error_shrinks() {
        let dev: Vec<f64> = [0.1, 0.01, 0.001]
            .iter()
            .map(|&x| ((busch_energy(x, Branch::LowestRepulsive).unwrap() - 1.5 - pert(x)) / pert(x)).abs())
            .collect();
        assert!(dev[0] > dev[1] && dev[1] > dev[2], "{dev:?}");
    }

    #[test]
    fn unitarity_limit_approaches_next_pole() {
        let e = busch_energy(1e8, Branch::LowestRepulsive).unwrap();
        assert!(e < 2.5 && e > 2.5 - 1e-6, "{e}");
    }

    #[test]
    fn monotone_on_log_grid() {
        let mut prev = 1.5;
        for i in 0..50 {
            let x = 10f64.powf(-4.0 + 7.0 * i as f64 / 49.0);
            let e = busch_energy(x, Branch::LowestRepulsive).unwrap();
            assert!(e > prev, "x = {x}");
            prev = e;
        }
    }

    #[test]
    fn rejects_negative_lengths() {
        assert!(busch_energy(-0.1, Branch::LowestRepulsive).is_err());
        assert!(perturbative_energy(-1e-9, 1.0, 1.0).is_err());
    }

    #[test]
    fn strontium_is_perturbative() {
        let sr = Species::Sr87.params();
        let e = exchange_energies(&sr, khz(104.0), Method::Perturbative).unwrap();
        assert!(e.regime_flags.singlet_perturbative && e.regime_flags.triplet_perturbative);
        let vex = e.v_ex / H / 1e3;
        let vd = e.v_d / H / 1e3;
        assert!(vex > 3.0 && vex < 12.0, "{vex}");
        assert!(vd > 7.5 && vd < 30.0, "{vd}");
        assert_eq!(e.v_ex, (e.u_plus - e.u_minus) / 2.0);
        assert_eq!(e.v_d, (e.u_plus + e.u_minus) / 2.0);
    }

    #[test]
    fn ytterbium_triplet_saturates() {
        let yb = Species::Yb173.params();
        let w = khz(103.0);
        let e = exchange_energies(&yb, w, Method::Busch).unwrap();
        assert!(e.regime_flags.singlet_perturbative);
        assert!(!e.regime_flags.triplet_perturbative);
        let up = e.u_plus / (HBAR * w);
        assert!(up >= 0.5 && up < 1.0, "{up}");
        assert!(0.0 < e.u_minus && e.u_minus < e.u_plus);
    }

    #[test]
    fn degenerate_channels_have_no_exchange() {
        let yb = Species::Yb173.params();
        let a = 5e-9;
        let e = energies_for_lengths(yb.mass, a, a, khz(100.0), Method::Busch, 0.5).unwrap();
        assert_eq!(e.v_ex, 0.0);
        assert_eq!(e.v_d, e.u_plus);
    }

    proptest! {
        #[test]
        fn busch_is_increasing(x in 1e-4f64..100.0, f in 1.001f64..2.0) {
            let a = busch_energy(x, Branch::LowestRepulsive).unwrap();
            let b = busch_energy(x * f, Branch::LowestRepulsive).unwrap();
            prop_assert!(b > a);
        }
    }
}
