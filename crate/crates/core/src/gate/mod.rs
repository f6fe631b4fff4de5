//! Two-qubit exchange-gate dynamics under a Lindblad master equation.
//!
//! Internal basis: |1⟩ = |g↓,e↓⟩, |2⟩ = |g↑,e↓⟩, |3⟩ = |g↓,e↑⟩,
//! |4⟩ = |g↑,e↑⟩ (zero-based indices 0..4 in code). The 12-dimensional space
//! adds the motional labels {00, 01_s, 01_a} in block-major order: index
//! 4·motion + spin.

pub mod chain;
pub mod engine;
pub mod hamiltonian;
pub mod lindblad;
pub mod phase;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub use chain::{
    crossing, evolve_chain, imperfect_cooling_curve, optimal_vos_scan, repeated_swap_curve, single_swap_error,
    swap_target, thermal_initial_state, ChainMode, CoolingPoint, SwapChainParams,
};
pub use engine::{evolve_master, GateSchedule, ScheduleSegment, Trajectory};
pub use hamiltonian::{build_hamiltonian, build_hamiltonian_12, unitary_propagator, GateEnergies};
pub use lindblad::{apply_lindblad, superoperator, LindbladRates};
pub use phase::{phase_sensitivity, PhaseSensitivity};

use crate::error::{Error, Result};

pub const DOWN_DOWN: usize = 0;
pub const UP_DOWN: usize = 1;
pub const DOWN_UP: usize = 2;
pub const UP_UP: usize = 3;

pub const MOTION_GROUND: usize = 0;
pub const MOTION_SYMMETRIC: usize = 1;
pub const MOTION_ANTISYMMETRIC: usize = 2;

const HERMITIAN_TOL: f64 = 1e-12;
const POSITIVITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GateDensityMatrix {
    pub matrix: DMatrix<Complex64>,
}

impl GateDensityMatrix {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        let n = matrix.nrows();
        if matrix.ncols() != n || !(n == 4 || n == 12) {
            return Err(Error::Domain(format!("density matrix must be 4x4 or 12x12, got {}x{}", n, matrix.ncols())));
        }
        Ok(GateDensityMatrix { matrix })
    }

    /// |i⟩⟨i| in a space of dimension `dim`.
    pub fn basis_state(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::Domain(format!("basis index {i} outside dimension {dim}")));
        }
        let mut m = DMatrix::zeros(dim, dim);
        m[(i, i)] = Complex64::new(1.0, 0.0);
        GateDensityMatrix::new(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn population(&self, i: usize) -> f64 {
        self.matrix[(i, i)].re
    }

    /// Largest |ρ − ρ†| entry.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut e: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                e = e.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        e
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let h = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        h.symmetric_eigenvalues().iter().copied().collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Checks Hermiticity, positivity and trace ≤ 1.
    pub fn check(&self) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::Invariant(format!("density matrix not Hermitian (error {herm:.3e})")));
        }
        let min = self.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(Error::Invariant(format!("density matrix not positive (eigenvalue {min:.3e})")));
        }
        let tr = self.trace();
        if tr > 1.0 + 1e-10 {
            return Err(Error::Invariant(format!("trace {tr} exceeds one")));
        }
        Ok(())
    }

    /// Replaces ρ by (ρ + ρ†)/2.
    pub fn symmetrize(&mut self) {
        self.matrix = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
    }

    /// Only the diagonal survives.
    pub fn dephased(&self) -> Self {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(self.matrix[(i, i)].re, 0.0);
        }
        GateDensityMatrix { matrix: m }
    }

    /// 4×4 spin state with motion traced out (identity for dim 4).
    pub fn spin_reduced(&self) -> DMatrix<Complex64> {
        if self.dim() == 4 {
            return self.matrix.clone();
        }
        let mut m = DMatrix::zeros(4, 4);
        for b in 0..3 {
            m += self.matrix.view((4 * b, 4 * b), (4, 4));
        }
        m
    }

    /// The 4×4 block of one motional state.
    pub fn motional_block(&self, motion: usize) -> DMatrix<Complex64> {
        if self.dim() == 4 {
            return self.matrix.clone();
        }
        self.matrix.view((4 * motion, 4 * motion), (4, 4)).into_owned()
    }

    /// Total population of one motional state.
    pub fn motional_population(&self, motion: usize) -> f64 {
        self.motional_block(motion).trace().re
    }

    /// ⟨ψ|ρ_spin|ψ⟩ for a normalised pure spin target.
    pub fn spin_fidelity(&self, target: &[Complex64; 4]) -> f64 {
        let r = self.spin_reduced();
        let mut f = Complex64::new(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                f += target[i].conj() * r[(i, j)] * target[j];
            }
        }
        f.re
    }
}

/// Basis vector |i⟩ of the spin space.
pub fn spin_ket(i: usize) -> [Complex64; 4] {
    let mut k = [Complex64::new(0.0, 0.0); 4];
    k[i] = Complex64::new(1.0, 0.0);
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn traced_spin_state() {
        let mut m = DMatrix::zeros(12, 12);
        m[(2, 2)] = Complex64::new(0.5, 0.0);
        m[(6, 6)] = Complex64::new(0.25, 0.0);
        m[(10, 10)] = Complex64::new(0.25, 0.0);
        let rho = GateDensityMatrix::new(m).unwrap();
        assert!((rho.spin_fidelity(&spin_ket(DOWN_UP)) - 1.0).abs() < 1e-15);
        assert!((rho.motional_population(MOTION_SYMMETRIC) - 0.25).abs() < 1e-15);
        rho.check().unwrap();
    }

    #[test]
    fn rejects_bad_shapes_and_states() {
        assert!(GateDensityMatrix::new(DMatrix::zeros(3, 3)).is_err());
        let mut m = DMatrix::zeros(4, 4);
        m[(0, 0)] = Complex64::new(-0.1, 0.0);
        assert!(GateDensityMatrix::new(m).unwrap().check().is_err());
    }
}
