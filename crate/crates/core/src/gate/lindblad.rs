//! Element-wise dissipator of the gate master equation and its vectorised
//! counterpart.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::constants::HBAR;
use crate::optical_switch::RateBundle;

/// Rates entering the dissipator, s⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LindbladRates {
    pub raman: f64,
    pub elastic: f64,
    /// Heating loss η²Γ↑ of states whose g atom is |↑⟩.
    pub heat_up: f64,
    pub heat_down: f64,
}

impl LindbladRates {
    /// Rates of `bundle` rescaled to the instantaneous shift `v_os`.
    pub fn at_shift(bundle: &RateBundle, v_os: f64) -> Self {
        let b = bundle.scaled_to(v_os);
        LindbladRates {
            raman: b.gamma_raman,
            elastic: b.gamma_el,
            heat_up: b.eta2_gamma_up,
            heat_down: b.eta2_gamma_down,
        }
    }

    /// Decay rate of every coherence.
    pub fn coherence(&self) -> f64 {
        0.5 * (self.raman + self.elastic + self.heat_up + self.heat_down)
    }

    fn loss(&self, spin: usize) -> f64 {
        let g_up = spin == 1 || spin == 3;
        if g_up { self.heat_up + self.raman } else { self.heat_down }
    }

    pub fn is_zero(&self) -> bool {
        self.raman == 0.0 && self.elastic == 0.0 && self.heat_up == 0.0 && self.heat_down == 0.0
    }
}

/// Adds L(ρ) to `out` for a row-major ρ of dimension 4 or 12.
///
/// Within each motional block Raman scattering moves |g↑⟩ population to
/// |g↓⟩ (2 → 1, 4 → 3) and heating removes population at η²Γ_σ for the
/// g-atom spin σ. In the 12-dimensional space the heating lost from the
/// ground block reappears, split equally, in the symmetric and
/// antisymmetric blocks. Every coherence decays at the same rate.
pub fn apply_lindblad(dim: usize, rates: &LindbladRates, rho: &[Complex64], out: &mut [Complex64]) {
    let gamma = rates.coherence();
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                out[i * dim + j] -= gamma * rho[i * dim + j];
            }
        }
    }
    for b in 0..dim / 4 {
        let d = |s: usize| (4 * b + s) * (dim + 1);
        for s in 0..4 {
            out[d(s)] -= rates.loss(s) * rho[d(s)];
        }
        out[d(0)] += rates.raman * rho[d(1)];
        out[d(2)] += rates.raman * rho[d(3)];
    }
    if dim == 12 {
        for s in 0..4 {
            let heat = if s == 1 || s == 3 { rates.heat_up } else { rates.heat_down };
            let p = rho[s * 13];
            out[(4 + s) * 13] += 0.5 * heat * p;
            out[(8 + s) * 13] += 0.5 * heat * p;
        }
    }
}

/// Adds −(i/ħ)[H, ρ] to `out` for a real symmetric H (J).
pub fn apply_commutator(dim: usize, h: &[f64], rho: &[Complex64], out: &mut [Complex64]) {
    let minus_i = Complex64::new(0.0, -1.0 / HBAR);
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..dim {
                let hik = h[i * dim + k];
                let hkj = h[k * dim + j];
                if hik != 0.0 {
                    acc += hik * rho[k * dim + j];
                }
                if hkj != 0.0 {
                    acc -= rho[i * dim + k] * hkj;
                }
            }
            out[i * dim + j] += minus_i * acc;
        }
    }
}

/// Generator 𝓛 acting on row-major vec(ρ): −(i/ħ)(H⊗1 − 1⊗Hᵀ) plus the
/// dissipator written as jump and projector terms.
pub fn superoperator(h: &DMatrix<f64>, rates: &LindbladRates) -> DMatrix<Complex64> {
    let n = h.nrows();
    let id = DMatrix::<Complex64>::identity(n, n);
    let hc = h.map(|x| Complex64::new(x, 0.0));
    let mut l = (hc.kronecker(&id) - id.kronecker(&hc.transpose())) * Complex64::new(0.0, -1.0 / HBAR);

    let proj = |i: usize| {
        let mut p = DMatrix::<Complex64>::zeros(n, n);
        p[(i, i)] = Complex64::new(1.0, 0.0);
        p
    };
    let jump = |to: usize, from: usize| {
        let mut a = DMatrix::<Complex64>::zeros(n, n);
        a[(to, from)] = Complex64::new(1.0, 0.0);
        a
    };
    // Feeding terms A ρ A† become A ⊗ Ā in row-major vectorisation.
    let feed = |a: &DMatrix<Complex64>, rate: f64| a.kronecker(&a.map(|z| z.conj())) * Complex64::new(rate, 0.0);

    let gamma = rates.coherence();
    let mut all_diag = DMatrix::<Complex64>::zeros(n * n, n * n);
    for i in 0..n {
        let pp = proj(i).kronecker(&proj(i));
        all_diag += &pp;
        let spin = i % 4;
        let g_up = spin == 1 || spin == 3;
        let loss = if g_up { rates.heat_up + rates.raman } else { rates.heat_down };
        l -= pp * Complex64::new(loss, 0.0);
        if g_up {
            l += feed(&jump(i - 1, i), rates.raman);
        }
        if n == 12 && i < 4 {
            let heat = if g_up { rates.heat_up } else { rates.heat_down };
            l += feed(&jump(i + 4, i), 0.5 * heat);
            l += feed(&jump(i + 8, i), 0.5 * heat);
        }
    }
    l -= (DMatrix::<Complex64>::identity(n * n, n * n) - all_diag) * Complex64::new(gamma, 0.0);
    l
}
