//! Parameter sets and dispatch for every command.

use aelgate::constants::{h_khz, khz, HBAR, H, TWO_PI};
use aelgate::cooling::{cooling_figures, CoolingConfig, Quench};
use aelgate::figures::{self, CoolingFigure, SwapChainFigure, Table, TransportScan, Value, VosScanFigure};
use aelgate::gate::engine::Engine;
use aelgate::gate::{
    imperfect_cooling_curve, repeated_swap_curve, thermal_initial_state, ChainMode,
    GateDensityMatrix, GateEnergies, SwapChainParams, DOWN_DOWN, DOWN_UP, UP_DOWN, UP_UP,
};
use aelgate::interactions::{exchange_energies_with, Method};
use aelgate::optical_switch::{intensity_for_shift, rate_bundle, OSBeamConfig, Polarization, RateBundle};
use aelgate::transport::{scan, stage_infidelity, transport_sequence_fidelity, RampKind, RampProtocol, Stage, TransportSetup};
use aelgate::{Species, SpeciesParams};
use serde_json::Value as Json;

use crate::error::{CliError, CliResult};
use crate::params::{ParamSpec, Params, Rule};
use crate::scenario::{CommandName, FigureName, Prepared};

/// Result table plus the model inputs it was computed from.
pub struct Outcome {
    pub table: Table,
    pub model: Json,
}

pub fn default_species(command: CommandName, figure: Option<FigureName>) -> Species {
    match (command, figure) {
        (CommandName::Transport | CommandName::Busch | CommandName::Rates | CommandName::Cooling, _) => Species::Yb173,
        (CommandName::Figure, Some(FigureName::Fig4a | FigureName::Fig4b | FigureName::FigS1)) => Species::Yb173,
        _ => Species::Sr87,
    }
}

fn trap_khz(sp: &SpeciesParams) -> f64 {
    (sp.trap.magic_frequency / TWO_PI / 1e3 * 1e6).round() / 1e6
}

const MODES: &[&str] = &["fresh_partner", "coherent"];

fn chain_specs() -> Vec<ParamSpec> {
    let d = SwapChainParams::strontium();
    let r = d.rates;
    vec![
        ParamSpec::num("v_os_khz", d.v_os / H / 1e3, Rule::NonNegative, "optical-switch shift V_OS/h"),
        ParamSpec::num("v_ex_khz", d.energies.v_ex / H / 1e3, Rule::Positive, "exchange energy V_ex/h"),
        ParamSpec::num("v_d_khz", d.energies.v_d / H / 1e3, Rule::Any, "direct energy V_d/h"),
        ParamSpec::num("gamma_raman_per_s", r.gamma_raman, Rule::NonNegative, "Raman rate at V_OS"),
        ParamSpec::num("gamma_el_per_s", r.gamma_el, Rule::NonNegative, "elastic dephasing rate at V_OS"),
        ParamSpec::num("eta2_gamma_up_per_s", r.eta2_gamma_up, Rule::NonNegative, "heating loss of g-up states at V_OS"),
        ParamSpec::num(
            "down_up_ratio",
            r.eta2_gamma_down / r.eta2_gamma_up,
            Rule::NonNegative,
            "heating of g-down relative to g-up states",
        ),
        ParamSpec::num("eta2", r.eta2_gamma_up / r.gamma_up, Rule::Positive, "squared Lamb-Dicke factor of the switch"),
        ParamSpec::num("t_transport_us", d.t_transport * 1e6, Rule::NonNegative, "one transport leg"),
        ParamSpec::num("t_down_us", d.t_down * 1e6, Rule::NonNegative, "one switch-on hold"),
        ParamSpec::num("transport_penalty", d.transport_penalty, Rule::Fraction, "infidelity per transport leg"),
        ParamSpec::text("mode", "fresh_partner", Rule::OneOf(MODES), "how consecutive gates are joined"),
    ]
}

fn chain(p: &Params) -> SwapChainParams {
    let v_os = h_khz(p.f64("v_os_khz"));
    let up = p.f64("eta2_gamma_up_per_s");
    let down = up * p.f64("down_up_ratio");
    let eta2 = p.f64("eta2");
    SwapChainParams {
        energies: GateEnergies::from_exchange(h_khz(p.f64("v_ex_khz")), h_khz(p.f64("v_d_khz"))),
        v_os,
        rates: RateBundle {
            v_os,
            gamma_raman: p.f64("gamma_raman_per_s"),
            gamma_el: p.f64("gamma_el_per_s"),
            gamma_up: up / eta2,
            gamma_down: down / eta2,
            eta2_gamma_up: up,
            eta2_gamma_down: down,
        },
        t_transport: p.f64("t_transport_us") * 1e-6,
        t_down: p.f64("t_down_us") * 1e-6,
        transport_penalty: p.f64("transport_penalty"),
        mode: if p.str("mode") == "coherent" { ChainMode::Coherent } else { ChainMode::FreshPartner },
    }
}

fn with(mut base: Vec<ParamSpec>, extra: Vec<ParamSpec>) -> Vec<ParamSpec> {
    base.extend(extra);
    base
}

fn scan_specs(d: TransportScan) -> Vec<ParamSpec> {
    vec![
        ParamSpec::num("depth_ratio", d.depth_ratio, Rule::Positive, "transport depth in units of the tweezer depth"),
        ParamSpec::num("t_min_us", d.t_min_us, Rule::Positive, "shortest duration"),
        ParamSpec::num("t_max_us", d.t_max_us, Rule::Positive, "longest duration"),
        ParamSpec::int("points", d.points as i64, Rule::AtLeast(2), "grid points"),
    ]
}

pub fn specs(command: CommandName, figure: Option<FigureName>, species: Species) -> Vec<ParamSpec> {
    let sp = species.params();
    let trap = trap_khz(&sp);
    match command {
        CommandName::Transport => with(
            scan_specs(TransportScan::ramp_up()),
            vec![
                ParamSpec::num("omega_tw_khz", trap, Rule::Positive, "tweezer trap frequency"),
                ParamSpec::num("site_spacing_um", sp.trap.site_spacing * 1e6, Rule::Positive, "tweezer separation"),
                ParamSpec::text("stage", "ramp_up", Rule::OneOf(&["ramp_up", "sweep", "full"]), "part of the transport"),
                ParamSpec::text(
                    "protocol",
                    "both",
                    Rule::OneOf(&["both", "locally_adiabatic", "naive"]),
                    "ramp family",
                ),
                ParamSpec::num("t_up_us", 3.912, Rule::Positive, "ramp-up and ramp-down time of the full stage"),
                ParamSpec::text("ramp_file", "", Rule::Any, "evaluate a ramp protocol JSON file instead of scanning"),
            ],
        ),
        CommandName::Busch => vec![
            ParamSpec::num("omega_tw_khz", trap, Rule::Positive, "tweezer trap frequency"),
            ParamSpec::text("method", "busch", Rule::OneOf(&["busch", "perturbative"]), "interaction model"),
            ParamSpec::num("threshold", 0.5, Rule::Positive, "a/a_tw below which a channel counts as perturbative"),
        ],
        CommandName::Rates => {
            let (detuning, intensity) = match species {
                Species::Yb173 => (45.0, 5.3e8),
                Species::Sr87 => (5.0, 2.65e9),
            };
            vec![
                ParamSpec::num("detuning_ghz", detuning, Rule::Any, "switch detuning from the highest hyperfine line"),
                ParamSpec::text(
                    "polarization",
                    "sigma_minus",
                    Rule::OneOf(&["sigma_minus", "sigma_plus", "pi"]),
                    "switch polarisation",
                ),
                ParamSpec::num("intensity_ratio", intensity, Rule::NonNegative, "I/I_sat"),
                ParamSpec::num("v_os_khz", 0.0, Rule::NonNegative, "if positive, choose the intensity giving this shift"),
                ParamSpec::num("trap_khz", trap, Rule::Positive, "trap frequency for the Lamb-Dicke factor"),
            ]
        }
        CommandName::Gate => with(
            chain_specs(),
            vec![
                ParamSpec::int("n_gates", 1, Rule::AtLeast(1), "gates to run"),
                ParamSpec::int("dim", 4, Rule::IntIn(&[4, 12]), "4: spin only, 12: with the first motional states"),
                ParamSpec::num("p", 0.0, Rule::Probability, "initial motional excitation (dim 12)"),
                ParamSpec::num("dt_us", 0.5, Rule::Positive, "sampling interval"),
            ],
        ),
        CommandName::RepeatSwap => {
            with(chain_specs(), vec![ParamSpec::int("n_max", 60, Rule::AtLeast(1), "longest chain")])
        }
        CommandName::VosScan => {
            let d = VosScanFigure::default();
            with(chain_specs(), vos_specs(&d))
        }
        CommandName::Cooling => vec![
            ParamSpec::num("omega_tw_khz", trap, Rule::Positive, "tweezer trap frequency"),
            ParamSpec::num("omega_sb_khz", 20.0, Rule::NonNegative, "sideband Rabi frequency"),
            ParamSpec::flag("quench", species == Species::Yb173, "cool on the quenched clock line"),
            ParamSpec::num("omega_aux_mhz", 10.0, Rule::NonNegative, "quench Rabi frequency"),
            ParamSpec::num("delta_aux_mhz", 10.0, Rule::Any, "quench detuning"),
            ParamSpec::num("tau_1aux_us", 1.06, Rule::Positive, "auxiliary state lifetime"),
            ParamSpec::num("tau_2aux_us", 0.3, Rule::Positive, "lifetime of the state it decays to"),
        ],
        CommandName::ImperfectCooling => {
            let d = CoolingFigure::default();
            with(chain_specs(), cooling_curve_specs(&d))
        }
        CommandName::Figure => match figure.expect("figure name checked before") {
            FigureName::Fig4a => scan_specs(TransportScan::ramp_up()),
            FigureName::Fig4b | FigureName::FigS1 => scan_specs(TransportScan::sweep()),
            FigureName::Fig5a => with(
                chain_specs(),
                vec![ParamSpec::int("n_max", SwapChainFigure::default().n_max as i64, Rule::AtLeast(1), "longest chain")],
            ),
            FigureName::Fig5b => with(chain_specs(), vos_specs(&VosScanFigure::default())),
            FigureName::Fig7 => with(chain_specs(), cooling_curve_specs(&CoolingFigure::default())),
        },
    }
}

fn vos_specs(d: &VosScanFigure) -> Vec<ParamSpec> {
    vec![
        ParamSpec::int("n_gates", d.n_gates as i64, Rule::AtLeast(1), "gates per point"),
        ParamSpec::num("v_os_min_khz", d.v_os_min_khz, Rule::NonNegative, "lowest shift"),
        ParamSpec::num("v_os_max_khz", d.v_os_max_khz, Rule::Positive, "highest shift"),
        ParamSpec::int("points", d.points as i64, Rule::AtLeast(2), "grid points"),
    ]
}

fn cooling_curve_specs(d: &CoolingFigure) -> Vec<ParamSpec> {
    vec![
        ParamSpec::int("n_gates", d.n_gates as i64, Rule::AtLeast(1), "gates per point"),
        ParamSpec::num("p_max", d.p_max, Rule::Probability, "largest initial excitation"),
        ParamSpec::int("points", d.points as i64, Rule::AtLeast(2), "grid points"),
    ]
}

/// Constraints between parameters.
pub fn check(command: CommandName, p: &Params) -> CliResult<()> {
    let has = |k: &str| p.specs().iter().any(|s| s.key == k);
    if has("t_min_us") {
        p.ordered("t_min_us", "t_max_us")?;
    }
    if has("v_os_min_khz") {
        p.ordered("v_os_min_khz", "v_os_max_khz")?;
    }
    if command == CommandName::Gate && p.usize("dim") == 4 && p.f64("p") > 0.0 {
        return Err(CliError::Validation("p > 0 needs dim = 12".into()));
    }
    if has("v_ex_khz") {
        chain(p).validate()?;
    }
    Ok(())
}

fn num_row(values: &[f64]) -> Vec<Value> {
    values.iter().map(|&x| Value::Float(x)).collect()
}

fn model<T: serde::Serialize>(x: &T) -> CliResult<Json> {
    Ok(serde_json::to_value(x)?)
}

pub fn execute(prep: &Prepared) -> CliResult<Outcome> {
    let p = &prep.params;
    match prep.command {
        CommandName::Transport => transport(prep.species, p),
        CommandName::Busch => busch(prep.species, p),
        CommandName::Rates => rates(prep.species, p),
        CommandName::Gate => gate(p),
        CommandName::RepeatSwap => {
            let params = chain(p);
            let mut table = Table::new(&["N", "infidelity"]);
            for (n, e) in repeated_swap_curve(p.usize("n_max"), &params)?.into_iter().skip(1) {
                table.push(vec![n.into(), e.into()]);
            }
            Ok(Outcome { table, model: model(&params)? })
        }
        CommandName::VosScan => {
            let fig = vos_figure(p);
            Ok(Outcome { table: figures::fig5b(&fig)?, model: model(&fig)? })
        }
        CommandName::Cooling => cooling(prep.species, p),
        CommandName::ImperfectCooling => {
            let fig = cooling_figure(p);
            let grid: Vec<f64> =
                (0..fig.points).map(|i| fig.p_max * i as f64 / (fig.points - 1) as f64).collect();
            let mut table = Table::new(&[
                "p",
                "infidelity",
                "ground_block_fidelity",
                "pop_ground",
                "pop_symmetric",
                "pop_antisymmetric",
            ]);
            for c in imperfect_cooling_curve(&grid, fig.n_gates, &fig.params)? {
                let m = c.motional_populations;
                table.push(num_row(&[c.p, c.infidelity, c.ground_block_fidelity, m[0], m[1], m[2]]));
            }
            Ok(Outcome { table, model: model(&fig)? })
        }
        CommandName::Figure => figure(prep.figure.expect("figure name checked before"), prep.species, p),
    }
}

fn transport_scan(species: Species, p: &Params) -> TransportScan {
    TransportScan {
        species,
        depth_ratio: p.f64("depth_ratio"),
        t_min_us: p.f64("t_min_us"),
        t_max_us: p.f64("t_max_us"),
        points: p.usize("points"),
    }
}

fn vos_figure(p: &Params) -> VosScanFigure {
    VosScanFigure {
        params: chain(p),
        n_gates: p.usize("n_gates"),
        v_os_min_khz: p.f64("v_os_min_khz"),
        v_os_max_khz: p.f64("v_os_max_khz"),
        points: p.usize("points"),
    }
}

fn cooling_figure(p: &Params) -> CoolingFigure {
    CoolingFigure { params: chain(p), n_gates: p.usize("n_gates"), p_max: p.f64("p_max"), points: p.usize("points") }
}

fn figure(name: FigureName, species: Species, p: &Params) -> CliResult<Outcome> {
    match name {
        FigureName::Fig4a | FigureName::Fig4b | FigureName::FigS1 => {
            let scan = transport_scan(species, p);
            let table = match name {
                FigureName::Fig4a => figures::fig4a(&scan)?,
                FigureName::Fig4b => figures::fig4b(&scan)?,
                _ => figures::fig_s1(&scan)?,
            };
            Ok(Outcome { table, model: model(&scan)? })
        }
        FigureName::Fig5a => {
            let fig = SwapChainFigure { params: chain(p), n_max: p.usize("n_max") };
            Ok(Outcome { table: figures::fig5a(&fig)?, model: model(&fig)? })
        }
        FigureName::Fig5b => {
            let fig = vos_figure(p);
            Ok(Outcome { table: figures::fig5b(&fig)?, model: model(&fig)? })
        }
        FigureName::Fig7 => {
            let fig = cooling_figure(p);
            Ok(Outcome { table: figures::fig7(&fig)?, model: model(&fig)? })
        }
    }
}

fn transport(species: Species, p: &Params) -> CliResult<Outcome> {
    let mut sp = species.params();
    sp.trap.magic_frequency = khz(p.f64("omega_tw_khz"));
    sp.trap.site_spacing = p.f64("site_spacing_um") * 1e-6;
    let setup = TransportSetup::for_species(&sp, p.f64("depth_ratio"));
    let mut table = Table::new(&["t_total_us", "infidelity", "protocol"]);

    let file = p.str("ramp_file");
    if !file.is_empty() {
        let text = std::fs::read_to_string(file).map_err(|e| CliError::io(file, e))?;
        let ramp: RampProtocol = serde_json::from_str(&text).map_err(|e| {
            CliError::Validation(format!("{file}: line {}, column {}: {e}", e.line(), e.column()))
        })?;
        ramp.validate()?;
        let label = match ramp.kind {
            RampKind::Naive => "naive",
            RampKind::LocallyAdiabatic => "locally_adiabatic",
            RampKind::Custom => "custom",
        };
        let f = transport_sequence_fidelity(&ramp)?;
        table.push(vec![(ramp.total_duration() * 1e6).into(), (1.0 - f).into(), label.into()]);
        return Ok(Outcome { table, model: model(&ramp)? });
    }

    let n = p.usize("points");
    let (lo, hi) = (p.f64("t_min_us"), p.f64("t_max_us"));
    let times: Vec<f64> = (0..n).map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64) * 1e-6).collect();
    let t_up = p.f64("t_up_us") * 1e-6;
    let kinds: &[(RampKind, &str)] = match p.str("protocol") {
        "locally_adiabatic" => &[(RampKind::LocallyAdiabatic, "locally_adiabatic")],
        "naive" => &[(RampKind::Naive, "naive")],
        _ => &[(RampKind::LocallyAdiabatic, "locally_adiabatic"), (RampKind::Naive, "naive")],
    };
    let stage_name = p.str("stage");
    for &(kind, label) in kinds {
        let values = scan(&times, |t| {
            let stage = match stage_name {
                "ramp_up" => Stage::RampUp,
                "sweep" => Stage::Sweep,
                _ => Stage::Full { t_up, t_sweep: t },
            };
            stage_infidelity(&setup, kind, stage, t)
        });
        for (t, v) in times.iter().zip(values) {
            let total = if stage_name == "full" { 2.0 * t_up + t } else { *t };
            table.push(vec![(total * 1e6).into(), v?.into(), label.into()]);
        }
    }
    Ok(Outcome { table, model: model(&setup)? })
}

fn busch(species: Species, p: &Params) -> CliResult<Outcome> {
    let sp = species.params();
    let omega = khz(p.f64("omega_tw_khz"));
    let method = p.str("method").parse::<Method>()?;
    let e = exchange_energies_with(&sp, omega, method, p.f64("threshold"))?;
    let (a_minus, a_plus) = sp.scattering_lengths_m();
    let mut table = Table::new(&["quantity", "energy_khz", "energy_hbar_omega", "a_over_atw", "perturbative_regime"]);
    let row = |name: &str, energy: f64, a: Option<f64>, pert: Option<bool>| {
        vec![
            name.into(),
            (energy / H / 1e3).into(),
            (energy / (HBAR * omega)).into(),
            a.map_or(Value::Text(String::new()), Value::Float),
            pert.map_or(Value::Text(String::new()), Value::Bool),
        ]
    };
    table.push(row("U_minus", e.u_minus, Some(a_minus / e.a_tw), Some(e.regime_flags.singlet_perturbative)));
    table.push(row("U_plus", e.u_plus, Some(a_plus / e.a_tw), Some(e.regime_flags.triplet_perturbative)));
    table.push(row("V_ex", e.v_ex, None, None));
    table.push(row("V_d", e.v_d, None, None));
    Ok(Outcome { table, model: model(&e)? })
}

fn rates(species: Species, p: &Params) -> CliResult<Outcome> {
    let pol = match p.str("polarization") {
        "sigma_plus" => Polarization::SigmaPlus,
        "pi" => Polarization::Pi,
        _ => Polarization::SigmaMinus,
    };
    let mut config = OSBeamConfig::new(species.params(), pol, TWO_PI * p.f64("detuning_ghz") * 1e9, p.f64("intensity_ratio"))?;
    let target = p.f64("v_os_khz");
    if target > 0.0 {
        config = config.with_intensity(intensity_for_shift(&config, h_khz(target))?);
    }
    let b = rate_bundle(&config, khz(p.f64("trap_khz")))?;
    let norm = b.v_os.abs() / HBAR;
    let ratio = |g: f64| if norm > 0.0 { g / norm } else { f64::NAN };
    let mut table = Table::new(&["quantity", "value", "unit"]);
    for (name, value, unit) in [
        ("intensity_ratio", config.intensity_ratio, "I_sat"),
        ("V_OS", b.v_os / H / 1e3, "kHz"),
        ("gamma_raman", b.gamma_raman, "1/s"),
        ("gamma_el", b.gamma_el, "1/s"),
        ("gamma_up", b.gamma_up, "1/s"),
        ("gamma_down", b.gamma_down, "1/s"),
        ("eta2_gamma_up", b.eta2_gamma_up, "1/s"),
        ("eta2_gamma_down", b.eta2_gamma_down, "1/s"),
        ("raman_ratio", ratio(b.gamma_raman), "1"),
        ("elastic_ratio", ratio(b.gamma_el), "1"),
    ] {
        table.push(vec![name.into(), value.into(), unit.into()]);
    }
    Ok(Outcome { table, model: model(&b)? })
}

fn gate(p: &Params) -> CliResult<Outcome> {
    let params = chain(p);
    params.validate()?;
    let dim = p.usize("dim");
    let mut rho = if dim == 12 { thermal_initial_state(p.f64("p"))? } else { GateDensityMatrix::basis_state(4, DOWN_UP)? };
    let schedule = params.gate_schedule();
    let engine = Engine::default();
    let dt = p.f64("dt_us") * 1e-6;
    let mut table =
        Table::new(&["gate", "t_us", "p_down_down", "p_up_down", "p_down_up", "p_up_up", "trace", "purity"]);
    let mut t0 = 0.0;
    for g in 1..=p.usize("n_gates") {
        if params.mode == ChainMode::FreshPartner {
            rho = rho.dephased();
        }
        let traj = engine.run(&rho, &schedule, &params.rates, dt)?;
        for pt in &traj.points {
            let spin = pt.rho.spin_reduced();
            let mut row = vec![g.into(), ((t0 + pt.t) * 1e6).into()];
            row.extend(num_row(&[
                spin[(DOWN_DOWN, DOWN_DOWN)].re,
                spin[(UP_DOWN, UP_DOWN)].re,
                spin[(DOWN_UP, DOWN_UP)].re,
                spin[(UP_UP, UP_UP)].re,
                pt.rho.trace(),
                pt.rho.purity(),
            ]));
            table.push(row);
        }
        t0 += schedule.total_duration();
        rho = traj.last().clone();
    }
    Ok(Outcome { table, model: model(&params)? })
}

fn cooling(species: Species, p: &Params) -> CliResult<Outcome> {
    let quench = p.bool("quench").then(|| Quench {
        omega_aux: TWO_PI * p.f64("omega_aux_mhz") * 1e6,
        delta_aux: TWO_PI * p.f64("delta_aux_mhz") * 1e6,
        gamma_1aux: 1.0 / (p.f64("tau_1aux_us") * 1e-6),
        gamma_2aux: 1.0 / (p.f64("tau_2aux_us") * 1e-6),
        gamma_nat: 0.0,
    });
    let config = CoolingConfig {
        species: species.params(),
        omega_tw: khz(p.f64("omega_tw_khz")),
        omega_sb: khz(p.f64("omega_sb_khz")),
        quench,
    };
    let f = cooling_figures(&config)?;
    let mut table =
        Table::new(&["gamma_c_per_s", "rate_per_ms", "n_bar", "n0", "sideband_resolved", "warning"]);
    table.push(vec![
        f.gamma_c.into(),
        (f.rate / 1e3).into(),
        f.n_bar_ss.into(),
        f.n0.into(),
        f.sideband_resolved.into(),
        f.warning.as_deref().unwrap_or("").into(),
    ]);
    Ok(Outcome { table, model: serde_json::json!({ "quench": quench, "omega_tw": config.omega_tw, "omega_sb": config.omega_sb, "caveat": aelgate::cooling::CAVEAT }) })
}
