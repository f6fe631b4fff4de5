//! Per-species constants, wavelength tables and small spectroscopic helpers.
//!
//! The shipped data lives in `data/species.json` (file units: nm, kHz, MHz,
//! Bohr radii) and is converted to SI on load.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::angular::doubled;
use crate::constants::{ATOMIC_MASS, BOHR_RADIUS, HBAR, TWO_PI};
use crate::error::{Error, Result};

const SPECIES_DATA: &str = include_str!("../data/species.json");
pub const DATA_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Species {
    Yb173,
    Sr87,
}

impl Species {
    pub const ALL: [Species; 2] = [Species::Yb173, Species::Sr87];

    pub fn key(self) -> &'static str {
        match self {
            Species::Yb173 => "yb173",
            Species::Sr87 => "sr87",
        }
    }

    pub fn params(self) -> SpeciesParams {
        SpeciesParams::shipped(self)
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for Species {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "yb173" | "173yb" | "yb" => Ok(Species::Yb173),
            "sr87" | "87sr" | "sr" => Ok(Species::Sr87),
            _ => Err(Error::Domain(format!("unknown species '{s}'; expected one of {{yb173, sr87}}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Purpose {
    Array,
    Transport,
    OS,
    Clock,
    Detection,
    Quench,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavelengthTableRow {
    pub purpose: Purpose,
    /// m
    pub wavelength: f64,
    /// Atomic units; `None` where the table has no entry.
    pub polarizability_g: Option<f64>,
    pub polarizability_e: Option<f64>,
    /// Annotations carried verbatim from the table, e.g. "vect.".
    pub polarizability_g_note: Option<String>,
    pub polarizability_e_note: Option<String>,
    /// s⁻¹
    pub scattering_rate_g: Option<f64>,
    pub scattering_rate_e: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringLengths {
    /// Bohr radii.
    pub singlet: f64,
    pub triplet: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperfine3P1 {
    /// Hz
    pub a: f64,
    pub b: f64,
    pub source: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapDefaults {
    /// rad/s
    pub magic_frequency: f64,
    /// m
    pub magic_waist: f64,
    pub transport_frequency: f64,
    pub transport_waist: f64,
    pub site_spacing: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeciesParams {
    pub name: Species,
    /// kg
    pub mass: f64,
    pub nuclear_spin: f64,
    /// m
    pub clock_wavelength: f64,
    pub magic_wavelength: f64,
    pub tuneout_wavelength: f64,
    /// ¹S₀ → ³P₁ wavelength, m.
    pub intercombination_wavelength: f64,
    /// ³P₁ natural linewidth Γ, rad/s.
    pub linewidth: f64,
    pub scattering_lengths: ScatteringLengths,
    /// Hz/G per unit m_F.
    pub zeeman_linear: f64,
    /// Hz/G²
    pub zeeman_quadratic: f64,
    pub hyperfine: Hyperfine3P1,
    pub trap: TrapDefaults,
    pub wavelength_table: Vec<WavelengthTableRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format_version: u32,
    species: Vec<RawSpecies>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpecies {
    name: Species,
    mass_u: f64,
    nuclear_spin: f64,
    clock_wavelength_nm: f64,
    magic_wavelength_nm: f64,
    tuneout_wavelength_nm: f64,
    intercombination_wavelength_nm: f64,
    intercombination_linewidth_khz: f64,
    scattering_lengths_a0: ScatteringLengths,
    zeeman_linear_hz_per_g: f64,
    zeeman_quadratic_hz_per_g2: f64,
    hyperfine_3p1: RawHyperfine,
    trap: RawTrap,
    wavelength_table: Vec<RawRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHyperfine {
    a_mhz: f64,
    b_mhz: f64,
    source: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTrap {
    magic_frequency_khz: f64,
    magic_waist_um: f64,
    transport_frequency_khz: f64,
    transport_waist_um: f64,
    site_spacing_um: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    purpose: Purpose,
    wavelength_nm: f64,
    polarizability_g: Option<f64>,
    polarizability_e: Option<f64>,
    polarizability_g_note: Option<String>,
    polarizability_e_note: Option<String>,
    scattering_rate_g: Option<f64>,
    scattering_rate_e: Option<f64>,
}

impl RawSpecies {
    fn into_params(self) -> SpeciesParams {
        SpeciesParams {
            name: self.name,
            mass: self.mass_u * ATOMIC_MASS,
            nuclear_spin: self.nuclear_spin,
            clock_wavelength: self.clock_wavelength_nm * 1e-9,
            magic_wavelength: self.magic_wavelength_nm * 1e-9,
            tuneout_wavelength: self.tuneout_wavelength_nm * 1e-9,
            intercombination_wavelength: self.intercombination_wavelength_nm * 1e-9,
            linewidth: TWO_PI * self.intercombination_linewidth_khz * 1e3,
            scattering_lengths: self.scattering_lengths_a0,
            zeeman_linear: self.zeeman_linear_hz_per_g,
            zeeman_quadratic: self.zeeman_quadratic_hz_per_g2,
            hyperfine: Hyperfine3P1 {
                a: self.hyperfine_3p1.a_mhz * 1e6,
                b: self.hyperfine_3p1.b_mhz * 1e6,
                source: self.hyperfine_3p1.source,
            },
            trap: TrapDefaults {
                magic_frequency: TWO_PI * self.trap.magic_frequency_khz * 1e3,
                magic_waist: self.trap.magic_waist_um * 1e-6,
                transport_frequency: TWO_PI * self.trap.transport_frequency_khz * 1e3,
                transport_waist: self.trap.transport_waist_um * 1e-6,
                site_spacing: self.trap.site_spacing_um * 1e-6,
            },
            wavelength_table: self
                .wavelength_table
                .into_iter()
                .map(|r| WavelengthTableRow {
                    purpose: r.purpose,
                    wavelength: r.wavelength_nm * 1e-9,
                    polarizability_g: r.polarizability_g,
                    polarizability_e: r.polarizability_e,
                    polarizability_g_note: r.polarizability_g_note,
                    polarizability_e_note: r.polarizability_e_note,
                    scattering_rate_g: r.scattering_rate_g,
                    scattering_rate_e: r.scattering_rate_e,
                })
                .collect(),
        }
    }
}

/// Parses a species data file and validates every entry.
pub fn load_species_file(json: &str) -> Result<Vec<SpeciesParams>> {
    let raw: RawFile = serde_json::from_str(json).map_err(|e| Error::Data(e.to_string()))?;
    if raw.format_version != DATA_FORMAT_VERSION {
        return Err(Error::Data(format!(
            "unsupported species data format version {} (expected {DATA_FORMAT_VERSION})",
            raw.format_version
        )));
    }
    let params: Vec<SpeciesParams> = raw.species.into_iter().map(RawSpecies::into_params).collect();
    for p in &params {
        p.validate()?;
    }
    Ok(params)
}

impl SpeciesParams {
    /// Parameters shipped with the crate.
    pub fn shipped(species: Species) -> SpeciesParams {
        load_species_file(SPECIES_DATA)
            .expect("shipped species data is valid")
            .into_iter()
            .find(|p| p.name == species)
            .expect("shipped species data covers every species")
    }

    pub fn validate(&self) -> Result<()> {
        let two_f = doubled(self.nuclear_spin)?;
        if two_f <= 0 || two_f % 2 == 0 {
            return Err(Error::Data(format!("{}: nuclear spin must be a positive half-integer", self.name)));
        }
        let sl = self.scattering_lengths;
        if !(sl.singlet > 0.0 && sl.triplet > 0.0) {
            return Err(Error::Data(format!("{}: scattering lengths must be positive", self.name)));
        }
        if sl.triplet <= sl.singlet {
            return Err(Error::Data(format!("{}: triplet scattering length must exceed singlet", self.name)));
        }
        let wavelengths = [
            self.clock_wavelength,
            self.magic_wavelength,
            self.tuneout_wavelength,
            self.intercombination_wavelength,
        ];
        if wavelengths.iter().any(|&w| !(w > 0.0)) || self.wavelength_table.iter().any(|r| !(r.wavelength > 0.0)) {
            return Err(Error::Data(format!("{}: wavelengths must be positive", self.name)));
        }
        if self.magic_wavelength == self.tuneout_wavelength {
            return Err(Error::Data(format!("{}: magic and tune-out wavelengths coincide", self.name)));
        }
        for row in &self.wavelength_table {
            match row.purpose {
                Purpose::Transport if row.polarizability_e != Some(0.0) => {
                    return Err(Error::Data(format!(
                        "{}: transport row at {} nm must have zero e-state polarizability",
                        self.name,
                        row.wavelength * 1e9
                    )))
                }
                Purpose::Array if row.polarizability_e.is_none() || row.polarizability_e != row.polarizability_g => {
                    return Err(Error::Data(format!(
                        "{}: array row at {} nm must have equal g and e polarizabilities",
                        self.name,
                        row.wavelength * 1e9
                    )))
                }
                _ => {}
            }
        }
        if !(self.linewidth > 0.0 && self.mass > 0.0) {
            return Err(Error::Data(format!("{}: mass and linewidth must be positive", self.name)));
        }
        Ok(())
    }

    /// Scattering lengths in metres, (singlet, triplet).
    pub fn scattering_lengths_m(&self) -> (f64, f64) {
        (self.scattering_lengths.singlet * BOHR_RADIUS, self.scattering_lengths.triplet * BOHR_RADIUS)
    }

    /// Energy of each ³P₁ hyperfine level F′ from the A and B constants, Hz.
    pub fn hyperfine_energy(&self, f_prime: f64) -> f64 {
        let i = self.nuclear_spin;
        let j = 1.0;
        let k = f_prime * (f_prime + 1.0) - i * (i + 1.0) - j * (j + 1.0);
        let quad = if i > 0.5 {
            self.hyperfine.b * (1.5 * k * (k + 1.0) - 2.0 * i * (i + 1.0) * j * (j + 1.0))
                / (4.0 * i * (2.0 * i - 1.0) * j * (2.0 * j - 1.0))
        } else {
            0.0
        };
        0.5 * self.hyperfine.a * k + quad
    }

    /// ³P₁ levels F′ ∈ {F+1, F, F−1} with their offsets above the F′ = F+1
    /// line, rad/s.
    pub fn hyperfine_offsets(&self) -> Vec<(f64, f64)> {
        let f = self.nuclear_spin;
        let reference = self.hyperfine_energy(f + 1.0);
        [f + 1.0, f, f - 1.0]
            .into_iter()
            .map(|fp| (fp, TWO_PI * (self.hyperfine_energy(fp) - reference)))
            .collect()
    }

    /// Rows of the wavelength table with the given purpose.
    pub fn rows(&self, purpose: Purpose) -> impl Iterator<Item = &WavelengthTableRow> {
        self.wavelength_table.iter().filter(move |r| r.purpose == purpose)
    }
}

/// Differential clock-line Zeeman shift m_F·B·linear − B²·quadratic, Hz.
pub fn zeeman_shift(species: &SpeciesParams, m_f: f64, b_gauss: f64) -> Result<f64> {
    if !(b_gauss >= 0.0) {
        return Err(Error::Domain(format!("magnetic field must be non-negative, got {b_gauss} G")));
    }
    Ok(m_f * b_gauss * species.zeeman_linear - b_gauss * b_gauss * species.zeeman_quadratic)
}

/// Recoil angular frequency ħk²/2m for a photon of the given wavelength.
pub fn recoil_frequency(species: &SpeciesParams, wavelength: f64) -> f64 {
    let k = TWO_PI / wavelength;
    HBAR * k * k / (2.0 * species.mass)
}

/// Lamb–Dicke parameter η = √(ω_R/ω_tw).
pub fn lamb_dicke(species: &SpeciesParams, trap_frequency: f64, wavelength: f64) -> Result<f64> {
    if !(trap_frequency > 0.0) {
        return Err(Error::Domain(format!("trap frequency must be positive, got {trap_frequency}")));
    }
    if !(wavelength > 0.0) {
        return Err(Error::Domain(format!("wavelength must be positive, got {wavelength}")));
    }
    Ok((recoil_frequency(species, wavelength) / trap_frequency).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::H;

    #[test]
    fn shipped_data_loads_and_validates() {
        for s in Species::ALL {
            let p = s.params();
            assert_eq!(p.name, s);
            p.validate().unwrap();
        }
        let yb = Species::Yb173.params();
        assert_eq!(yb.nuclear_spin, 2.5);
        assert!((yb.linewidth / TWO_PI - 182e3).abs() < 1e-6);
        assert_eq!(Species::Sr87.params().nuclear_spin, 4.5);
    }

    #[test]
    fn serde_round_trip_is_exact() {
        for s in Species::ALL {
            let p = s.params();
            let text = serde_json::to_string(&p).unwrap();
            let back: SpeciesParams = serde_json::from_str(&text).unwrap();
            assert_eq!(p, back);
            assert_eq!(p.mass.to_bits(), back.mass.to_bits());
            assert_eq!(p.linewidth.to_bits(), back.linewidth.to_bits());
        }
    }

    #[test]
    fn table_invariants_hold_for_shipped_rows() {
        for s in Species::ALL {
            let p = s.params();
            for r in p.rows(Purpose::Transport) {
                assert_eq!(r.polarizability_e, Some(0.0));
            }
            for r in p.rows(Purpose::Array) {
                assert_eq!(r.polarizability_e, r.polarizability_g);
            }
            let os = p.rows(Purpose::OS).next().unwrap();
            assert_eq!(os.polarizability_g_note.as_deref(), Some("vect."));
        }
    }

    #[test]
    fn broken_tables_are_rejected() {
        let broken = SPECIES_DATA.replacen("\"polarizability_e\": 0.0", "\"polarizability_e\": 3.0", 1);
        let e = load_species_file(&broken).unwrap_err().to_string();
        assert!(e.contains("transport row"), "{e}");
        let unknown = SPECIES_DATA.replacen("\"mass_u\"", "\"mass_amu\"", 1);
        assert!(load_species_file(&unknown).is_err());
    }

    #[test]
    fn hyperfine_ordering() {
        let yb = Species::Yb173.params();
        let off = yb.hyperfine_offsets();
        assert_eq!(off[0], (3.5, 0.0));
        // F' = 5/2 and 3/2 lie 4.698 GHz and 6.194 GHz above F' = 7/2.
        assert!((off[1].1 / TWO_PI - 4.698_114_75e9).abs() < 1e3);
        assert!((off[2].1 / TWO_PI - 6.193_982_25e9).abs() < 1e3);
        let sr = Species::Sr87.params().hyperfine_offsets();
        assert!((sr[1].1 / TWO_PI - 1.463_162_25e9).abs() < 1e3);
        assert!((sr[2].1 / TWO_PI - 2.593_419_375e9).abs() < 1e3);
    }

    #[test]
    fn zeeman_examples() {
        let yb = Species::Yb173.params();
        let sr = Species::Sr87.params();
        assert!((zeeman_shift(&yb, 1.0, 1.0).unwrap() - 111.938).abs() < 1e-9);
        assert_eq!(zeeman_shift(&yb, 2.5, 0.0).unwrap(), 0.0);
        assert!((zeeman_shift(&sr, -4.5, 2.0).unwrap() + 976.532).abs() < 1e-9);
        assert!(zeeman_shift(&sr, 0.5, -1.0).is_err());
    }

    #[test]
    fn lamb_dicke_by_hand() {
        let yb = Species::Yb173.params();
        let w = TWO_PI * 103e3;
        let lambda = 555.8e-9;
        // ω_R/2π = h / (2 m λ²)
        let recoil_hz = H / (2.0 * yb.mass * lambda * lambda);
        let expected = (recoil_hz / 103e3).sqrt();
        let eta = lamb_dicke(&yb, w, lambda).unwrap();
        // H and HBAR are rounded independently in CODATA.
        assert!((eta / expected - 1.0).abs() < 1e-9);
        assert!((eta - 0.190_4).abs() < 1e-3);
        assert!(lamb_dicke(&yb, 1e15, lambda).unwrap() < 1e-4);
        assert!(lamb_dicke(&yb, 0.0, lambda).is_err());
    }

    #[test]
    fn species_parsing_lists_valid_names() {
        assert_eq!("YB173".parse::<Species>().unwrap(), Species::Yb173);
        let e = "li6".parse::<Species>().unwrap_err().to_string();
        assert!(e.contains("{yb173, sr87}"));
    }
}
