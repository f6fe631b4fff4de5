//! Gate Hamiltonians in the internal basis, J.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::HBAR;
use crate::interactions::InteractionEnergies;

/// Interaction energies entering the gate Hamiltonian, J.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateEnergies {
    pub v_ex: f64,
    pub v_d: f64,
    pub u_minus: f64,
}

impl GateEnergies {
    pub const ZERO: GateEnergies = GateEnergies { v_ex: 0.0, v_d: 0.0, u_minus: 0.0 };

    /// Energies from exchange and direct terms, U⁻ = V_d − V_ex.
    pub fn from_exchange(v_ex: f64, v_d: f64) -> Self {
        GateEnergies { v_ex, v_d, u_minus: v_d - v_ex }
    }
}

impl From<&InteractionEnergies> for GateEnergies {
    fn from(e: &InteractionEnergies) -> Self {
        GateEnergies { v_ex: e.v_ex, v_d: e.v_d, u_minus: e.u_minus }
    }
}

/// ( U⁻+V_OS  0     0         0  )
/// ( 0        V_d   V_ex      0  )
/// ( 0        V_ex  V_d+V_OS  0  )
/// ( 0        0     0         U⁻ )
pub fn build_hamiltonian(e: GateEnergies, v_os: f64) -> DMatrix<f64> {
    let mut h = DMatrix::zeros(4, 4);
    h[(0, 0)] = e.u_minus + v_os;
    h[(1, 1)] = e.v_d;
    h[(1, 2)] = e.v_ex;
    h[(2, 1)] = e.v_ex;
    h[(2, 2)] = e.v_d + v_os;
    h[(3, 3)] = e.u_minus;
    h
}

/// Block-diagonal Hamiltonian over the motional states {00, 01_s, 01_a}.
/// The symmetric block shares the ground-state interactions; the
/// antisymmetric one has no contact interaction at all.
pub fn build_hamiltonian_12(ground: GateEnergies, v_os: f64) -> DMatrix<f64> {
    let mut h = DMatrix::zeros(12, 12);
    let blocks = [build_hamiltonian(ground, v_os), build_hamiltonian(ground, v_os), build_hamiltonian(GateEnergies::ZERO, v_os)];
    for (b, block) in blocks.iter().enumerate() {
        h.view_mut((4 * b, 4 * b), (4, 4)).copy_from(block);
    }
    h
}

/// exp(−iHt/ħ) for a real symmetric Hamiltonian.
pub fn unitary_propagator(h: &DMatrix<f64>, t: f64) -> DMatrix<Complex64> {
    let eig = h.clone().symmetric_eigen();
    let n = h.nrows();
    let mut d = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        d[(i, i)] = Complex64::from_polar(1.0, -eig.eigenvalues[i] * t / HBAR);
    }
    let v = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
    &v * d * v.transpose()
}
