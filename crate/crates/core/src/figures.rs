//! Default parameter sets and curve generators for the reproduced figures.

use rayon::prelude::*;
use serde::Serialize;

use crate::constants::{h_khz, H};
use crate::error::{Error, Result};
use crate::gate::{imperfect_cooling_curve, optimal_vos_scan, repeated_swap_curve, SwapChainParams};
use crate::species::Species;
use crate::transport::{
    classical_gaussian_check, classical_harmonic_check, stage_infidelity, stage_ramp, RampKind, Stage,
    TransportSetup,
};

/// One table cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Float(x) => write!(f, "{x:.10e}"),
            Value::Text(s) => write!(f, "{s}"),
            Value::Bool(b) => write!(f, "{b}"),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Transport scans for ¹⁷³Yb: 2 μm spacing, V_g = 1.5 V_magic.
#[derive(Debug, Clone, Serialize)]
pub struct TransportScan {
    pub species: Species,
    pub depth_ratio: f64,
    pub t_min_us: f64,
    pub t_max_us: f64,
    pub points: usize,
}

impl TransportScan {
    pub fn ramp_up() -> Self {
        TransportScan { species: Species::Yb173, depth_ratio: 1.5, t_min_us: 0.5, t_max_us: 15.0, points: 146 }
    }

    pub fn sweep() -> Self {
        TransportScan { species: Species::Yb173, depth_ratio: 1.5, t_min_us: 1.0, t_max_us: 20.0, points: 191 }
    }

    fn setup(&self) -> TransportSetup {
        TransportSetup::for_species(&self.species.params(), self.depth_ratio)
    }

    fn run(&self, stage: Stage) -> Result<Table> {
        if !(self.t_max_us > self.t_min_us && self.t_min_us > 0.0) {
            return Err(Error::Domain("scan needs 0 < t_min_us < t_max_us".into()));
        }
        let setup = self.setup();
        let times = grid(self.t_min_us, self.t_max_us, self.points);
        let mut table = Table::new(&["t_total_us", "infidelity", "protocol"]);
        for (kind, label) in [(RampKind::LocallyAdiabatic, "locally_adiabatic"), (RampKind::Naive, "naive")] {
            let values: Vec<Result<f64>> =
                times.par_iter().map(|&t| stage_infidelity(&setup, kind, stage, t * 1e-6)).collect();
            for (t, v) in times.iter().zip(values) {
                table.push(vec![(*t).into(), v?.into(), label.into()]);
            }
        }
        Ok(table)
    }
}

pub fn fig4a(scan: &TransportScan) -> Result<Table> {
    scan.run(Stage::RampUp)
}

pub fn fig4b(scan: &TransportScan) -> Result<Table> {
    scan.run(Stage::Sweep)
}

/// Classical sweep comparison in the harmonic and the full Gaussian
/// potential.
pub fn fig_s1(scan: &TransportScan) -> Result<Table> {
    let setup = scan.setup();
    let times = grid(scan.t_min_us, scan.t_max_us, scan.points);
    let mut table = Table::new(&["t_total_us", "infidelity_harmonic", "infidelity_gaussian", "max_excursion", "escaped"]);
    let rows: Vec<Result<Vec<Value>>> = times
        .par_iter()
        .map(|&t| {
            let ramp = stage_ramp(&setup, RampKind::LocallyAdiabatic, Stage::Sweep, t * 1e-6)?;
            let total = ramp.total_duration();
            let harmonic = classical_harmonic_check(&ramp, total)?;
            Ok(match classical_gaussian_check(&ramp, total) {
                Ok(g) => vec![t.into(), harmonic.infidelity.into(), g.infidelity.into(), g.max_excursion.into(), false.into()],
                Err(Error::Escape { .. }) => {
                    vec![t.into(), harmonic.infidelity.into(), 1.0.into(), f64::NAN.into(), true.into()]
                }
                Err(e) => return Err(e),
            })
        })
        .collect();
    for r in rows {
        table.push(r?);
    }
    Ok(table)
}

#[derive(Debug, Clone, Serialize)]
pub struct SwapChainFigure {
    pub params: SwapChainParams,
    pub n_max: usize,
}

impl Default for SwapChainFigure {
    fn default() -> Self {
        SwapChainFigure { params: SwapChainParams::strontium(), n_max: 60 }
    }
}

pub fn fig5a(fig: &SwapChainFigure) -> Result<Table> {
    let mut table = Table::new(&["N", "infidelity"]);
    for (n, e) in repeated_swap_curve(fig.n_max, &fig.params)?.into_iter().skip(1) {
        table.push(vec![n.into(), e.into()]);
    }
    Ok(table)
}

#[derive(Debug, Clone, Serialize)]
pub struct VosScanFigure {
    pub params: SwapChainParams,
    pub n_gates: usize,
    pub v_os_min_khz: f64,
    pub v_os_max_khz: f64,
    pub points: usize,
}

impl Default for VosScanFigure {
    fn default() -> Self {
        VosScanFigure { params: SwapChainParams::strontium(), n_gates: 40, v_os_min_khz: 50.0, v_os_max_khz: 600.0, points: 45 }
    }
}

pub fn fig5b(fig: &VosScanFigure) -> Result<Table> {
    let v: Vec<f64> = grid(fig.v_os_min_khz, fig.v_os_max_khz, fig.points).into_iter().map(h_khz).collect();
    let col = format!("infidelity_{}", fig.n_gates);
    let mut table = Table::new(&["V_OS_kHz", &col]);
    for (v, e) in optimal_vos_scan(fig.n_gates, &v, &fig.params)? {
        table.push(vec![(v / H / 1e3).into(), e.into()]);
    }
    Ok(table)
}

#[derive(Debug, Clone, Serialize)]
pub struct CoolingFigure {
    pub params: SwapChainParams,
    pub n_gates: usize,
    pub p_max: f64,
    pub points: usize,
}

impl Default for CoolingFigure {
    fn default() -> Self {
        CoolingFigure { params: SwapChainParams::strontium(), n_gates: 1, p_max: 0.1, points: 21 }
    }
}

pub fn fig7(fig: &CoolingFigure) -> Result<Table> {
    let p = grid(0.0, fig.p_max, fig.points);
    let mut table = Table::new(&["p", "infidelity"]);
    for c in imperfect_cooling_curve(&p, fig.n_gates, &fig.params)? {
        table.push(vec![c.p.into(), c.infidelity.into()]);
    }
    Ok(table)
}
