//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria known not to be met by the implemented models are listed in
//! `KNOWN_FAILURES`; the run fails if any other criterion fails, or if a
//! known failure starts passing so the list can be pruned.

mod common;

use std::time::{Duration, Instant};

use aelgate::angular::clebsch_gordan_doubled;
use aelgate::constants::{h_khz, khz, H, HBAR, TWO_PI};
use aelgate::cooling::{cooling_figures, gamma_eff, CoolingConfig, Quench};
use aelgate::figures::{self, SwapChainFigure, Table, TransportScan, VosScanFigure};
use aelgate::gate::engine::Engine;
use aelgate::gate::lindblad::apply_commutator;
use aelgate::gate::{
    apply_lindblad, build_hamiltonian, build_hamiltonian_12, crossing, evolve_master, imperfect_cooling_curve,
    repeated_swap_curve, single_swap_error, superoperator, ChainMode, GateDensityMatrix, GateEnergies,
    GateSchedule, LindbladRates, ScheduleSegment, SwapChainParams, DOWN_UP, UP_DOWN,
};
use aelgate::interactions::{busch_energy, exchange_energies, Branch, Method};
use aelgate::optical_switch::{rate_bundle, OSBeamConfig, Polarization, RateBundle};
use aelgate::transport::{first_dip, run_tdho, stage_infidelity, stage_ramp, RampKind, Stage, TransportSetup};
use aelgate::{Result, Species};
use nalgebra::DVector;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Criteria whose targets the models do not reach; see the README.
const KNOWN_FAILURES: &[usize] = &[6, 10];

// Pinned tolerances.
const TRANSPORT_TARGET: f64 = 3e-3;
const TRANSPORT_MAX_TIME: f64 = 20e-6;
const NAIVE_FACTOR: f64 = 10.0;
const FOCK_TOL: f64 = 1e-6;
const FOCK_MIN_DIM: usize = 60;
const PERTURBATIVE_TOL: f64 = 0.01;
const TRIPLET_MIN_SHIFT: f64 = 0.5;
const FREQUENCY_TOL: f64 = 1e-3;
const SQRT_SWAP_TOL: f64 = 1e-6;
const SUPEROPERATOR_TOL: f64 = 1e-10;
const CROSSING_RANGE: (usize, usize) = (35, 55);
const SINGLE_SWAP_RANGE: (f64, f64) = (3e-5, 3e-4);
const VOS_OPTIMUM_KHZ: (f64, f64) = (150.0, 350.0);
const LINEAR_RESIDUAL: f64 = 0.05;
const P_ZERO_TOL: f64 = 1e-8;
const RATIO_FACTOR: f64 = 2.0;
const RAMAN_RATIO: f64 = 5e-7;
const ELASTIC_RATIO: f64 = 1e-7;
const QUENCH_TOL: f64 = 0.05;
const SR_N0_MIN: f64 = 0.99;
const YB_N0_MIN: f64 = 0.97;
const RATE_FACTOR: f64 = 3.0;
const SR_RATE_PER_MS: f64 = 10.0;
const YB_RATE_PER_MS: f64 = 0.7;
const HERMITIAN_TOL: f64 = 1e-12;
const POSITIVITY_TOL: f64 = -1e-9;
const TRACE_GROWTH_TOL: f64 = 1e-10;
const SYMPLECTIC_TOL: f64 = 1e-9;
const CG_TOL: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn within_factor(x: f64, target: f64, factor: f64) -> bool {
    x >= target / factor && x <= target * factor
}

fn yb_setup() -> TransportSetup {
    TransportSetup::for_species(&Species::Yb173.params(), 1.5)
}

fn golden_min<F: Fn(f64) -> Result<f64>>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    while b - a > tol {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c)? < f(d)? {
            b = d;
        } else {
            a = c;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}

fn criterion_1() -> Result<Outcome> {
    let setup = yb_setup();
    let up = |t: f64| stage_infidelity(&setup, RampKind::LocallyAdiabatic, Stage::RampUp, t);
    let sweep = |t: f64| stage_infidelity(&setup, RampKind::LocallyAdiabatic, Stage::Sweep, t);
    let (t_up, _) = first_dip(up, 2e-6, 6e-6, 41)?;
    // The constant-velocity sweep returns the atom to rest after a whole
    // number of trap periods.
    let period = TWO_PI / setup.landmarks()?.omega_loaded;
    let (t_sweep, _) = golden_min(sweep, 0.97 * period, 1.03 * period, 1e-12)?;
    let total = 2.0 * t_up + t_sweep;
    let full = |kind, t_up: f64, t_sweep: f64| stage_infidelity(&setup, kind, Stage::Full { t_up, t_sweep }, 0.0);
    let best = full(RampKind::LocallyAdiabatic, t_up, t_sweep)?;
    let naive_same = full(RampKind::Naive, t_up, t_sweep)?;

    // Best naive sequence no longer than the locally adiabatic one.
    let mut naive_best = f64::INFINITY;
    for i in 0..=10 {
        let tu = 1e-6 + 0.4e-6 * i as f64;
        for j in 0..=20 {
            let ts = 2e-6 + (total - 2.0 * tu - 2e-6) * j as f64 / 20.0;
            if ts > 0.0 {
                naive_best = naive_best.min(full(RampKind::Naive, tu, ts)?);
            }
        }
    }
    outcome(
        best <= TRANSPORT_TARGET
            && total <= TRANSPORT_MAX_TIME
            && naive_same >= NAIVE_FACTOR * best
            && naive_best >= NAIVE_FACTOR * best,
        format!(
            "locally adiabatic 1-F = {best:.2e} at t = {:.2} us (t_up {:.3}, t_sweep {:.3}); naive at the same times {naive_same:.2e}, best naive up to that time {naive_best:.2e}",
            total * 1e6,
            t_up * 1e6,
            t_sweep * 1e6
        ),
    )
}

fn criterion_2() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let ramp = common::random_ramp(&mut rng);
        ramp.validate()?;
        let run = run_tdho(&ramp, ramp.total_duration(), 1e-12)?;
        let (fock, tail) = common::fock_fidelity(&ramp);
        if tail > 1e-12 {
            return outcome(false, format!("Fock basis truncated: tail norm {tail:.1e}"));
        }
        worst = worst.max((run.fidelity - fock).abs());
    }
    outcome(
        worst < FOCK_TOL && common::DIM >= FOCK_MIN_DIM,
        format!("max |F_gauss - F_fock| = {worst:.2e} over 3 random ramps, dim {}", common::DIM),
    )
}

fn criterion_3() -> Result<Outcome> {
    let zero = busch_energy(0.0, Branch::LowestRepulsive)? - 1.5;
    let small = busch_energy(0.01, Branch::LowestRepulsive)? - 1.5;
    let pert = (2.0 / std::f64::consts::PI).sqrt() * 0.01;
    let rel = (small / pert - 1.0).abs();
    let grid: Vec<f64> = (0..50).map(|i| 10f64.powf(-4.0 + 6.0 * i as f64 / 49.0)).collect();
    let energies = grid.iter().map(|&x| busch_energy(x, Branch::LowestRepulsive)).collect::<Result<Vec<_>>>()?;
    let monotone = energies.windows(2).all(|w| w[1] > w[0]);
    let omega = khz(103.0);
    let e = exchange_energies(&Species::Yb173.params(), omega, Method::Busch)?;
    let triplet = e.u_plus / (HBAR * omega);
    outcome(
        zero == 0.0 && rel < PERTURBATIVE_TOL && monotone && triplet >= TRIPLET_MIN_SHIFT,
        format!(
            "U(0) = {zero}; perturbative deviation {:.3}% at a/a_tw = 0.01; monotone on 50 points: {monotone}; Yb U+ = {triplet:.3} hbar w",
            rel * 100.0
        ),
    )
}

fn exchange() -> GateEnergies {
    GateEnergies::from_exchange(h_khz(6.0), h_khz(15.0))
}

fn criterion_4() -> Result<Outcome> {
    let e = exchange();
    let expected = 2.0 * e.v_ex / HBAR;
    let t_end = 5.0 * TWO_PI / expected;
    let schedule = GateSchedule { segments: vec![ScheduleSegment::constant(t_end, 0.0, e)] };
    let rho0 = GateDensityMatrix::basis_state(4, DOWN_UP)?;
    let traj = evolve_master(&rho0, &schedule, &RateBundle::zero(), t_end / 400.0)?;
    let samples: Vec<(f64, f64)> = traj.points.iter().map(|p| (p.t, p.rho.population(UP_DOWN))).collect();
    let cost = |w: f64| samples.iter().map(|(t, p)| (p - 0.5 * (1.0 - (w * t).cos())).powi(2)).sum::<f64>();
    let (mut a, mut b) = (0.95 * expected, 1.05 * expected);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..100 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if cost(c) < cost(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let freq_err = (0.5 * (a + b) / expected - 1.0).abs();

    let t_half = H / (8.0 * e.v_ex);
    let half = GateSchedule { segments: vec![ScheduleSegment::constant(t_half, 0.0, e)] };
    let rho = evolve_master(&rho0, &half, &RateBundle::zero(), t_half)?.last().clone();
    let dev = [
        (rho.population(UP_DOWN) - 0.5).abs(),
        (rho.population(DOWN_UP) - 0.5).abs(),
        (rho.matrix[(UP_DOWN, DOWN_UP)].norm() - 0.5).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    outcome(
        freq_err < FREQUENCY_TOL && dev < SQRT_SWAP_TOL,
        format!("fitted frequency off by {:.2e}; sqrt(SWAP) deviation {dev:.2e}", freq_err),
    )
}

fn criterion_5() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(0x11d_b1ad);
    let mut worst: f64 = 0.0;
    for dim in [4, 12] {
        for _ in 0..10 {
            let e = GateEnergies::from_exchange(h_khz(rng.gen_range(1.0..10.0)), h_khz(rng.gen_range(5.0..20.0)));
            let v = h_khz(rng.gen_range(50.0..500.0));
            let rates = LindbladRates {
                raman: rng.gen_range(1e2..1e4),
                elastic: rng.gen_range(1e2..1e4),
                heat_up: rng.gen_range(1e2..1e4),
                heat_down: rng.gen_range(1e2..1e4),
            };
            let h = if dim == 4 { build_hamiltonian(e, v) } else { build_hamiltonian_12(e, v) };
            let flat = common::row_major(&common::random_rho(&mut rng, dim));
            let mut direct = vec![Complex64::new(0.0, 0.0); dim * dim];
            apply_commutator(dim, h.transpose().as_slice(), &flat, &mut direct);
            apply_lindblad(dim, &rates, &flat, &mut direct);
            let vectorised = superoperator(&h, &rates) * DVector::from_vec(flat);
            let scale = direct.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let err = direct.iter().zip(vectorised.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            worst = worst.max(err / scale);
        }
    }
    outcome(worst < SUPEROPERATOR_TOL, format!("max relative mismatch {worst:.2e} over 2 x 10 random states"))
}

fn criterion_6(fig5a: &Table) -> Result<Outcome> {
    let curve: Vec<(usize, f64)> = fig5a
        .rows
        .iter()
        .map(|r| match (&r[0], &r[1]) {
            (figures::Value::Int(n), figures::Value::Float(e)) => (*n as usize, *e),
            _ => unreachable!("fig5a rows are (N, infidelity)"),
        })
        .collect();
    let n10 = crossing(&curve, 0.1);
    let single = single_swap_error(&SwapChainParams::strontium())?;
    let crossing_ok = n10.is_some_and(|n| (CROSSING_RANGE.0..=CROSSING_RANGE.1).contains(&n));
    let single_ok = (SINGLE_SWAP_RANGE.0..=SINGLE_SWAP_RANGE.1).contains(&single);
    outcome(
        crossing_ok && single_ok,
        format!(
            "10% crossed at N = {} (ok: {crossing_ok}); single SWAP error {single:.3e} (ok: {single_ok})",
            n10.map_or("none".into(), |n| n.to_string())
        ),
    )
}

fn criterion_7(fig5b: &Table) -> Result<Outcome> {
    let pts: Vec<(f64, f64)> = fig5b
        .rows
        .iter()
        .map(|r| match (&r[0], &r[1]) {
            (figures::Value::Float(v), figures::Value::Float(e)) => (*v, *e),
            _ => unreachable!("fig5b rows are (V_OS, infidelity)"),
        })
        .collect();
    let (v_min, e_min) = pts.iter().copied().fold((0.0, f64::INFINITY), |acc, p| if p.1 < acc.1 { p } else { acc });
    let increasing = pts.windows(2).all(|w| w[1].1 >= w[0].1);
    let decreasing = pts.windows(2).all(|w| w[1].1 <= w[0].1);
    let in_range = (VOS_OPTIMUM_KHZ.0..=VOS_OPTIMUM_KHZ.1).contains(&v_min);
    outcome(
        !increasing && !decreasing && in_range,
        format!(
            "minimum {e_min:.4} at V_OS/h = {v_min:.1} kHz over {:.0}..{:.0} kHz",
            pts[0].0,
            pts[pts.len() - 1].0
        ),
    )
}

fn criterion_8() -> Result<Outcome> {
    let params = SwapChainParams::strontium();
    let p: Vec<f64> = (0..=10).map(|i| 0.005 * i as f64).collect();
    let curve = imperfect_cooling_curve(&p, 1, &params)?;
    let e: Vec<f64> = curve.iter().map(|c| c.infidelity).collect();
    let n = p.len() as f64;
    let (sx, sy) = (p.iter().sum::<f64>(), e.iter().sum::<f64>());
    let sxx = p.iter().map(|x| x * x).sum::<f64>();
    let sxy = p.iter().zip(&e).map(|(x, y)| x * y).sum::<f64>();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let icept = (sy - slope * sx) / n;
    let span = (slope * p[p.len() - 1]).abs();
    let residual = p.iter().zip(&e).map(|(x, y)| (y - icept - slope * x).abs()).fold(0.0, f64::max) / span;

    let four = 1.0 - repeated_swap_curve(1, &params)?[1].1;
    let p0 = (curve[0].ground_block_fidelity - four).abs();
    outcome(
        residual < LINEAR_RESIDUAL && p0 < P_ZERO_TOL,
        format!(
            "slope {slope:.4} per unit p, max residual {:.2e} of the span; p = 0 ground block vs 4-dim {p0:.1e}",
            residual
        ),
    )
}

fn criterion_9() -> Result<Outcome> {
    let c = OSBeamConfig::new(Species::Yb173.params(), Polarization::SigmaMinus, TWO_PI * 45e9, 5.3e8)?;
    let b = rate_bundle(&c, khz(103.0))?;
    let norm = TWO_PI * b.v_os.abs() / H;
    let (raman, elastic) = (b.gamma_raman / norm, b.gamma_el / norm);
    outcome(
        within_factor(raman, RAMAN_RATIO, RATIO_FACTOR) && within_factor(elastic, ELASTIC_RATIO, RATIO_FACTOR),
        format!("Raman ratio {raman:.3e}, elastic ratio {elastic:.3e}"),
    )
}

fn criterion_10() -> Result<Outcome> {
    let yb = CoolingConfig {
        species: Species::Yb173.params(),
        omega_tw: khz(103.0),
        omega_sb: khz(20.0),
        quench: Some(Quench::ytterbium(TWO_PI * 10e6, TWO_PI * 10e6)),
    };
    let q = yb.quench.expect("quenched");
    let full = gamma_eff(&yb)?;
    let approx = q.gamma_aux() * q.omega_aux.powi(2) / (4.0 * q.delta_aux.powi(2));
    let quench_dev = (full / approx - 1.0).abs();
    let sr = CoolingConfig { species: Species::Sr87.params(), omega_tw: khz(104.0), omega_sb: khz(20.0), quench: None };
    let fy = cooling_figures(&yb)?;
    let fs = cooling_figures(&sr)?;
    let (ry, rs) = (fy.rate / 1e3, fs.rate / 1e3);
    let rates_ok = within_factor(rs, SR_RATE_PER_MS, RATE_FACTOR) && within_factor(ry, YB_RATE_PER_MS, RATE_FACTOR);
    outcome(
        quench_dev < QUENCH_TOL && fs.n0 >= SR_N0_MIN && fy.n0 >= YB_N0_MIN && rates_ok,
        format!(
            "quench formula deviation {:.2}%; n0 Sr {:.4}, Yb {:.4}; rates Sr {rs:.1}/ms, Yb {ry:.1}/ms",
            quench_dev * 100.0,
            fs.n0,
            fy.n0
        ),
    )
}

/// Hermiticity, positivity and trace monotonicity along recorded gate
/// trajectories. Returns the worst violations.
fn check_chain(rho0: &GateDensityMatrix, n: usize, params: &SwapChainParams) -> Result<(f64, f64, f64)> {
    let engine = Engine::default();
    let schedule = params.gate_schedule();
    let (mut herm, mut min_eig, mut growth) = (0.0f64, f64::INFINITY, f64::NEG_INFINITY);
    let mut rho = rho0.clone();
    let mut last_trace = rho.trace();
    for _ in 0..n {
        if params.mode == ChainMode::FreshPartner {
            rho = rho.dephased();
        }
        let traj = engine.run(&rho, &schedule, &params.rates, 1e-6)?;
        for p in &traj.points {
            herm = herm.max(p.rho.hermiticity_error());
            min_eig = min_eig.min(p.rho.min_eigenvalue());
            growth = growth.max(p.rho.trace() - last_trace);
            last_trace = p.rho.trace();
        }
        rho = traj.last().clone();
    }
    Ok((herm, min_eig, growth))
}

fn table_text(t: &Table) -> String {
    t.rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join("\n")
}

struct Figures {
    fig4a: Table,
    fig4b: Table,
    fig5a: Table,
    fig5b: Table,
    fig7: Table,
    fig_s1: Table,
}

impl Figures {
    fn generate() -> Result<Self> {
        Ok(Figures {
            fig4a: figures::fig4a(&TransportScan::ramp_up())?,
            fig4b: figures::fig4b(&TransportScan::sweep())?,
            fig5a: figures::fig5a(&SwapChainFigure::default())?,
            fig5b: figures::fig5b(&VosScanFigure::default())?,
            fig7: figures::fig7(&figures::CoolingFigure::default())?,
            fig_s1: figures::fig_s1(&TransportScan::sweep())?,
        })
    }

    fn text(&self) -> [String; 6] {
        [&self.fig4a, &self.fig4b, &self.fig5a, &self.fig5b, &self.fig7, &self.fig_s1].map(table_text)
    }
}

fn criterion_11(first: &Figures) -> Result<Outcome> {
    let params = SwapChainParams::strontium();
    let (h4, e4, g4) = check_chain(&GateDensityMatrix::basis_state(4, DOWN_UP)?, 60, &params)?;
    let mut worst = (h4, e4, g4);
    for p in [0.0, 0.05, 0.1] {
        let (h, e, g) = check_chain(&aelgate::gate::thermal_initial_state(p)?, 1, &params)?;
        worst = (worst.0.max(h), worst.1.min(e), worst.2.max(g));
    }
    let rho_ok = worst.0 < HERMITIAN_TOL && worst.1 > POSITIVITY_TOL && worst.2 < TRACE_GROWTH_TOL;

    let setup = yb_setup();
    let mut symp: f64 = 0.0;
    let mut runs = 0;
    for (stage, scan) in [(Stage::RampUp, TransportScan::ramp_up()), (Stage::Sweep, TransportScan::sweep())] {
        for kind in [RampKind::LocallyAdiabatic, RampKind::Naive] {
            for i in 0..scan.points {
                let t = scan.t_min_us + (scan.t_max_us - scan.t_min_us) * i as f64 / (scan.points - 1) as f64;
                let ramp = stage_ramp(&setup, kind, stage, t * 1e-6)?;
                symp = symp.max(run_tdho(&ramp, ramp.total_duration(), 1e-10)?.max_symplectic_error);
                runs += 1;
            }
        }
    }

    let mut cg: f64 = 0.0;
    for j1 in [1i32, 3, 5, 9] {
        for mm in (-(j1 + 2)..=(j1 + 2)).step_by(2) {
            for jj in [j1 - 2, j1, j1 + 2] {
                for jk in [j1 - 2, j1, j1 + 2] {
                    if jj < 0 || jk < 0 || mm.abs() > jj || mm.abs() > jk {
                        continue;
                    }
                    let mut s = 0.0;
                    for q in [-2, 0, 2] {
                        let m1 = mm - q;
                        if m1.abs() <= j1 {
                            s += clebsch_gordan_doubled(j1, m1, 2, q, jj, mm) * clebsch_gordan_doubled(j1, m1, 2, q, jk, mm);
                        }
                    }
                    let expect = if jj == jk { 1.0 } else { 0.0 };
                    cg = cg.max((s - expect).abs());
                }
            }
        }
    }

    let second = Figures::generate()?;
    let deterministic = first.text() == second.text();
    outcome(
        rho_ok && symp < SYMPLECTIC_TOL && cg < CG_TOL && deterministic,
        format!(
            "rho: hermiticity {:.1e}, min eigenvalue {:.1e}, trace growth {:.1e}; symplectic {symp:.1e} over {runs} runs; CG {cg:.1e}; figures deterministic: {deterministic}",
            worst.0, worst.1, worst.2
        ),
    )
}

fn main() {
    let started = Instant::now();
    let figures = Figures::generate().expect("figure generation");
    let generated = started.elapsed();
    println!("figures generated in {:.1} s", generated.as_secs_f64());

    type Check<'a> = Box<dyn Fn() -> Result<Outcome> + 'a>;
    let budgets: [(usize, Duration, Check); 11] = [
        (1, Duration::from_secs(60), Box::new(criterion_1)),
        (2, Duration::from_secs(120), Box::new(criterion_2)),
        (3, Duration::from_secs(10), Box::new(criterion_3)),
        (4, Duration::from_secs(10), Box::new(criterion_4)),
        (5, Duration::from_secs(10), Box::new(criterion_5)),
        (6, Duration::from_secs(60), Box::new(|| criterion_6(&figures.fig5a))),
        (7, Duration::from_secs(300), Box::new(|| criterion_7(&figures.fig5b))),
        (8, Duration::from_secs(120), Box::new(criterion_8)),
        (9, Duration::from_secs(10), Box::new(criterion_9)),
        (10, Duration::from_secs(10), Box::new(criterion_10)),
        (11, Duration::from_secs(600), Box::new(|| criterion_11(&figures))),
    ];

    let mut unexpected = Vec::new();
    for (id, budget, check) in budgets {
        let t0 = Instant::now();
        let result = check();
        // Figure-backed criteria also pay for their share of generation.
        let elapsed = t0.elapsed() + if matches!(id, 6 | 7) { generated } else { Duration::ZERO };
        let (pass, detail) = match result {
            Ok(o) => (o.pass && elapsed <= budget, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        println!(
            "criterion {id:>2}: {} | {detail} | {:.2} s (budget {} s)",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        if pass == KNOWN_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcome: {unexpected:?} (known failures: {KNOWN_FAILURES:?})");
        std::process::exit(1);
    }
}
