//! Spin-½ operators and the two-spin Hamiltonians.
//!
//! Basis order: index 0 is spin up (`S^z = +½`), index 1 spin down; the first
//! spin is the outer Kronecker factor.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ONE, ZERO};
use crate::tensor::{MultipartiteOperator, TensorSpace};

/// Spin-½ operators `S^α = σ^α / 2` and ladders `S^± = S^x ± iS^y`.
#[derive(Debug, Clone)]
pub struct SpinHalfOps {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub z: ComplexMatrix,
    pub plus: ComplexMatrix,
    pub minus: ComplexMatrix,
}

pub fn spin_half_ops() -> SpinHalfOps {
    let h = Complex64::new(0.5, 0.0);
    let ih = Complex64::new(0.0, 0.5);
    let build = |d: [Complex64; 4]| ComplexMatrix::new(2, 2, d.to_vec()).expect("2x2");
    SpinHalfOps {
        x: build([ZERO, h, h, ZERO]),
        y: build([ZERO, -ih, ih, ZERO]),
        z: build([h, ZERO, ZERO, -h]),
        plus: build([ZERO, ONE, ZERO, ZERO]),
        minus: build([ZERO, ZERO, ONE, ZERO]),
    }
}

/// Field `h`, longitudinal coupling `J` and transverse coupling `J1`
/// (energy units, ħ = 1). Any signs are allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinModelParams {
    pub h: f64,
    pub j: f64,
    pub j1: f64,
}

impl SpinModelParams {
    pub fn new(h: f64, j: f64, j1: f64) -> Result<Self> {
        if !(h.is_finite() && j.is_finite() && j1.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "spin model parameters must be finite (h={h}, J={j}, J1={j1})"
            )));
        }
        Ok(Self { h, j, j1 })
    }

    pub fn ising(h: f64, j: f64) -> Result<Self> {
        Self::new(h, j, 0.0)
    }
}

fn two_spins() -> TensorSpace {
    TensorSpace::bipartite(2, 2).expect("2x2 space")
}

/// `−(S^z ⊗ 1 + 1 ⊗ S^z)`, the Zeeman term per unit field.
pub fn zeeman_shape() -> ComplexMatrix {
    let s = spin_half_ops();
    let id = ComplexMatrix::identity(2);
    s.z.kron(&id).add(&id.kron(&s.z)).expect("same shape").scale_real(-1.0)
}

/// `S^z ⊗ S^z`.
pub fn zz_coupling() -> ComplexMatrix {
    let s = spin_half_ops();
    s.z.kron(&s.z)
}

/// Zeeman term `H₀ = −h (S₁^z ⊗ 1 + 1 ⊗ S₂^z)`.
pub fn zeeman_term(h: f64) -> MultipartiteOperator {
    MultipartiteOperator::new(two_spins(), zeeman_shape().scale_real(h)).expect("4x4")
}

/// Anisotropic interaction `J1 (S₁⁺S₂⁻ + S₁⁻S₂⁺) + 2J S₁^z S₂^z`.
///
/// In Cartesian components the transverse part is `2J1 (S^x⊗S^x + S^y⊗S^y)`.
/// This normalization gives `Tr H² = 2h² + J² + 2J1²` and the short-time
/// coefficient `(J² + 2J1²)/8`.
pub fn interaction_term(j: f64, j1: f64) -> MultipartiteOperator {
    let s = spin_half_ops();
    let transverse = s.plus.kron(&s.minus).add(&s.minus.kron(&s.plus)).expect("same shape");
    let m = transverse
        .scale_real(j1)
        .add(&zz_coupling().scale_real(2.0 * j))
        .expect("same shape");
    MultipartiteOperator::new(two_spins(), hermitize(m)).expect("4x4")
}

/// `H = H₀ + H_int` on two spins.
pub fn heisenberg_hamiltonian(p: &SpinModelParams) -> MultipartiteOperator {
    let h0 = zeeman_term(p.h);
    let hint = interaction_term(p.j, p.j1);
    let m = h0.matrix().add(hint.matrix()).expect("same shape");
    MultipartiteOperator::new(two_spins(), m).expect("4x4")
}

/// Diagonal Ising Hamiltonian `−h(m₁+m₂) + 2J m₁m₂`.
pub fn ising_hamiltonian(h: f64, j: f64) -> MultipartiteOperator {
    heisenberg_hamiltonian(&SpinModelParams { h, j, j1: 0.0 })
}

/// Multimode operator `C Σ_{mn} |mm⟩⟨nn|` on `M ⊗ M`.
///
/// It maps any product state to a multiple of the maximally entangled
/// state `Σ_m |mm⟩`.
pub fn multimode_operator(m: usize, c: Complex64) -> Result<MultipartiteOperator> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "multimode operator needs M >= 2, got {m}"
        )));
    }
    if c == ZERO || !c.re.is_finite() || !c.im.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "multimode amplitude must be finite and nonzero, got {c}"
        )));
    }
    let n = m * m;
    // |mm⟩ has flat index m·(M+1).
    let diag_index = |i: usize| i.is_multiple_of(m + 1);
    let matrix = ComplexMatrix::from_fn(n, n, |r, s| if diag_index(r) && diag_index(s) { c } else { ZERO });
    MultipartiteOperator::new(TensorSpace::bipartite(m, m)?, matrix)
}

/// Drops the rounding-level anti-Hermitian part so the result is exactly
/// Hermitian.
fn hermitize(m: ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(m[(i, i)].re, 0.0)
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        }
    })
}
