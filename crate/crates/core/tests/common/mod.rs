//! Shared helpers for the integration tests.
#![allow(dead_code)]

use aelgate::ode::Dop853;
use aelgate::transport::ramp::Tracker;
use aelgate::transport::tdho::Reference;
use aelgate::transport::{Profile, RampKind, RampProtocol, Segment, TransportSetup};
use aelgate::Species;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::Rng;

pub const DIM: usize = 160;

/// H/ħω₀ without the constant Ω/2: Ω a†a + η/2 (a² + a†²) − F (a + a†).
pub fn apply_h(r: f64, force: f64, psi: &[f64], out: &mut [f64]) {
    let om = 0.5 * (r + 1.0);
    let et = 0.5 * (r - 1.0);
    for n in 0..DIM {
        let mut re = om * n as f64 * psi[2 * n];
        let mut im = om * n as f64 * psi[2 * n + 1];
        let mut add = |m: usize, c: f64| {
            re += c * psi[2 * m];
            im += c * psi[2 * m + 1];
        };
        if n + 2 < DIM {
            add(n + 2, 0.5 * et * (((n + 1) * (n + 2)) as f64).sqrt());
        }
        if n >= 2 {
            add(n - 2, 0.5 * et * ((n * (n - 1)) as f64).sqrt());
        }
        if n + 1 < DIM {
            add(n + 1, -force * ((n + 1) as f64).sqrt());
        }
        if n >= 1 {
            add(n - 1, -force * (n as f64).sqrt());
        }
        out[2 * n] = re;
        out[2 * n + 1] = im;
    }
}

pub fn ground_vector(r: f64, force: f64) -> Vec<f64> {
    let mut h = DMatrix::<f64>::zeros(DIM, DIM);
    let mut col = vec![0.0; 2 * DIM];
    let mut unit = vec![0.0; 2 * DIM];
    for j in 0..DIM {
        unit.iter_mut().for_each(|x| *x = 0.0);
        unit[2 * j] = 1.0;
        apply_h(r, force, &unit, &mut col);
        for i in 0..DIM {
            h[(i, j)] = col[2 * i];
        }
    }
    let eig = SymmetricEigen::new(h);
    let k = eig.eigenvalues.imin();
    eig.eigenvectors.column(k).iter().copied().collect()
}

pub fn random_ramp(rng: &mut StdRng) -> RampProtocol {
    let mut setup = TransportSetup::for_species(&Species::Yb173.params(), 1.0);
    setup.base_trap.centers = vec![0.0];
    let v = setup.base_trap.depth;
    let depth = rng.gen_range(0.3..1.2) * v;
    let c0 = rng.gen_range(-0.05e-6..0.05e-6);
    let c1 = c0 + rng.gen_range(-0.06e-6..0.06e-6);
    let segments = vec![
        Segment { duration: rng.gen_range(2e-6..6e-6), profile: Profile::Linear { depth: [0.0, depth], center: [c0, c0] } },
        Segment { duration: rng.gen_range(2e-6..6e-6), profile: Profile::Linear { depth: [depth, depth], center: [c0, c1] } },
    ];
    RampProtocol {
        kind: RampKind::Custom,
        mass: setup.mass,
        base_trap: setup.base_trap,
        transport_trap: setup.transport_trap,
        segments,
    }
}

/// Final ground-state population from Fock-basis evolution and the norm
/// left in the top ten levels.
pub fn fock_fidelity(ramp: &RampProtocol) -> (f64, f64) {
    let reference = Reference::of(ramp).unwrap();
    let omega0 = reference.omega0;
    let scale = std::f64::consts::SQRT_2 * reference.x0;
    let mut tracker = Tracker::new(ramp).unwrap();
    let mut psi = vec![0.0; 2 * DIM];
    psi[0] = 1.0;
    let solver = Dop853::new(1e-12, 1e-13);
    let bps = ramp.breakpoints();
    let mut hpsi = vec![0.0; 2 * DIM];
    for k in 0..ramp.segments.len() {
        let seg_start = bps[k];
        solver
            .integrate(
                |tau, y, dy| {
                    let s = tracker.at_in(k, tau / omega0 - seg_start)?;
                    let r = (s.omega / omega0).powi(2);
                    apply_h(r, r * (s.x_min - reference.x_c0) / scale, y, &mut hpsi);
                    for n in 0..DIM {
                        dy[2 * n] = hpsi[2 * n + 1];
                        dy[2 * n + 1] = -hpsi[2 * n];
                    }
                    Ok(())
                },
                bps[k] * omega0,
                bps[k + 1] * omega0,
                &mut psi,
            )
            .unwrap();
    }
    let s = tracker.at(ramp.total_duration()).unwrap();
    let r = (s.omega / omega0).powi(2);
    let g = ground_vector(r, r * (s.x_min - reference.x_c0) / scale);
    let (mut re, mut im) = (0.0, 0.0);
    for n in 0..DIM {
        re += g[n] * psi[2 * n];
        im += g[n] * psi[2 * n + 1];
    }
    let tail: f64 = (DIM - 10..DIM).map(|n| psi[2 * n].powi(2) + psi[2 * n + 1].powi(2)).sum();
    (re * re + im * im, tail)
}

/// Random full-rank density matrix.
pub fn random_rho(rng: &mut StdRng, n: usize) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let rho = &g * g.adjoint();
    let tr = rho.trace();
    rho / tr
}

pub fn row_major(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    m.transpose().as_slice().to_vec()
}
