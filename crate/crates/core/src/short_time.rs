//! Leading small-`t` behavior of `ε(U(t))` for a bipartite generator.
//!
//! Expanding the propagator to second order gives
//!
//! ```text
//! Δ₁  = M₂ Tr₂ H² − (Tr₂ H)²            (operator on factor 1)
//! Δ₂  = M₁ Tr₁ H² − (Tr₁ H)²            (operator on factor 2)
//! Δ₁₂ = M₁M₂ Tr H² − (Tr H)²
//! μ   = (M₁ Tr Δ₁ + M₂ Tr Δ₂ − Δ₁₂) / (M₁M₂)
//! ‖U^⊗(t)‖² ≃ M₁M₂ − μt²
//! ```
//!
//! where `Tr₂` traces out factor 2. Since `‖U‖² = M₁M₂` exactly, the measure
//! is `ε ≃ μt² / (2M₁M₂)` in natural-log units. Note the `1/(M₁M₂)`: the
//! often-quoted shorthand `ε ≃ ½μt²` drops it, and only the form used here
//! reproduces `(J² + 2J₁²)t²/8` for two spins.

use crate::eigen::HERMITIAN_TOLERANCE;
use crate::error::{Error, Result};
use crate::measure::check_log_base;
use crate::tensor::MultipartiteOperator;

#[derive(Debug, Clone)]
pub struct ShortTimeData {
    pub delta1: MultipartiteOperator,
    pub delta2: MultipartiteOperator,
    pub delta12: f64,
    pub mu: f64,
    /// Coefficient of `t²` in `ε(t)` for `log_base`.
    pub coeff: f64,
    pub log_base: f64,
}

fn delta(
    h: &MultipartiteOperator,
    h_sq: &MultipartiteOperator,
    keep: usize,
    traced_dim: f64,
) -> Result<MultipartiteOperator> {
    let first = h.partial_trace(keep)?;
    let second = h_sq.partial_trace(keep)?;
    let first_sq = first.matrix().matmul(first.matrix())?;
    let m = second.matrix().scale_real(traced_dim).sub(&first_sq)?;
    MultipartiteOperator::new(first.space().clone(), m)
}

pub fn short_time_data(h: &MultipartiteOperator, log_base: f64) -> Result<ShortTimeData> {
    check_log_base(log_base)?;
    let space = h.space();
    if space.factors() != 2 {
        return Err(Error::NotBipartite {
            factors: space.factors(),
        });
    }
    let deviation = h.matrix().hermitian_deviation();
    if deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NonHermitian { deviation });
    }
    let (m1, m2) = (space.dims()[0] as f64, space.dims()[1] as f64);
    let h_sq = h.map_matrix(|m| m.matmul(m).expect("square"))?;

    let delta1 = delta(h, &h_sq, 0, m2)?;
    let delta2 = delta(h, &h_sq, 1, m1)?;
    let tr = h.trace();
    let delta12 = m1 * m2 * h_sq.trace().re - tr.norm_sqr();

    let mu = (m1 * delta1.trace().re + m2 * delta2.trace().re - delta12) / (m1 * m2);
    let coeff = mu / (2.0 * m1 * m2 * log_base.ln());
    Ok(ShortTimeData {
        delta1,
        delta2,
        delta12,
        mu,
        coeff,
        log_base,
    })
}

/// `coeff · t²`.
pub fn epsilon_quadratic(data: &ShortTimeData, t: f64) -> f64 {
    data.coeff * t * t
}

/// Coefficient of `t⁴` in the Ising `ε(t)`: `J²(J² − 12h²) / (192 ln b)`.
pub fn ising_quartic_coefficient(h: f64, j: f64, log_base: f64) -> f64 {
    j * j * (j * j - 12.0 * h * h) / (192.0 * log_base.ln())
}

/// Two-term Ising expansion `J²t²/(8 ln b) + J²(J² − 12h²)t⁴/(192 ln b)`.
pub fn epsilon_ising_short_time(h: f64, j: f64, t: f64, log_base: f64) -> f64 {
    let t2 = t * t;
    j * j * t2 / (8.0 * log_base.ln()) + ising_quartic_coefficient(h, j, log_base) * t2 * t2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ComplexMatrix;
    use crate::measure::evolution_measure_series;
    use crate::spin::{heisenberg_hamiltonian, ising_hamiltonian, spin_half_ops, SpinModelParams};
    use crate::tensor::TensorSpace;
    use std::f64::consts::{E, LN_2};

    #[test]
    fn ising_mu() {
        let d = short_time_data(&ising_hamiltonian(1.0, 1.0), 2.0).unwrap();
        // Tr Δⱼ = 2(h² + J²), Δ₁₂ = 4(2h² + J²)
        assert!((d.delta1.trace().re - 4.0).abs() < 1e-13);
        assert!((d.delta2.trace().re - 4.0).abs() < 1e-13);
        assert!((d.delta12 - 12.0).abs() < 1e-13);
        assert!((d.mu - 1.0).abs() < 1e-13);
        assert!((d.coeff - 1.0 / (8.0 * LN_2)).abs() < 1e-14);
        let e = epsilon_quadratic(&d, 0.1);
        assert!((e - 0.01 / (8.0 * LN_2)).abs() < 1e-16);
        assert!((e - 0.001_803).abs() < 1e-6);
        assert_eq!(epsilon_quadratic(&d, 0.0), 0.0);
    }

    #[test]
    fn heisenberg_deltas() {
        let s = spin_half_ops();
        let id = ComplexMatrix::identity(2);
        for &(h, j, j1) in &[(0.5, 1.0, 1.0), (2.0, 0.5, 0.3), (-1.0, 2.0, -0.7)] {
            let p = SpinModelParams::new(h, j, j1).unwrap();
            let d = short_time_data(&heisenberg_hamiltonian(&p), E).unwrap();
            let expected = id
                .scale_real(h * h + j * j + 2.0 * j1 * j1)
                .sub(&s.z.scale_real(4.0 * j * h))
                .unwrap();
            assert!(d.delta1.matrix().max_abs_diff(&expected).unwrap() < 1e-13);
            assert!(d.delta2.matrix().max_abs_diff(&expected).unwrap() < 1e-13);
            assert!((d.delta12 - 4.0 * (2.0 * h * h + j * j + 2.0 * j1 * j1)).abs() < 1e-12);
            assert!((d.mu - (j * j + 2.0 * j1 * j1)).abs() < 1e-12);
            assert!(d.delta1.matrix().is_hermitian(1e-12));
        }
        let p = SpinModelParams::new(0.5, 1.0, 1.0).unwrap();
        let d = short_time_data(&heisenberg_hamiltonian(&p), E).unwrap();
        assert!((epsilon_quadratic(&d, 0.1) - 0.00375).abs() < 1e-15);
    }

    #[test]
    fn no_interaction_no_growth() {
        for h in [0.0, 0.7, 3.0] {
            let p = SpinModelParams::new(h, 0.0, 0.0).unwrap();
            let d = short_time_data(&heisenberg_hamiltonian(&p), 2.0).unwrap();
            assert!(d.mu.abs() < 1e-13);
        }
    }

    #[test]
    fn coefficient_independent_of_field() {
        let coeffs: Vec<f64> = [0.0, 0.5, 2.0]
            .iter()
            .map(|&h| {
                let p = SpinModelParams::new(h, 1.2, 0.4).unwrap();
                short_time_data(&heisenberg_hamiltonian(&p), 2.0).unwrap().coeff
            })
            .collect();
        assert!(coeffs.windows(2).all(|w| (w[0] - w[1]).abs() < 1e-13));
    }

    #[test]
    fn quadratic_fit_of_exact_measure() {
        // Non-spin generator on 2 ⊗ 3.
        let h = ComplexMatrix::from_fn(6, 6, |i, j| {
            let x = (i * 6 + j) as f64;
            num_complex::Complex64::new((0.9 * x).sin(), (0.5 * x).cos())
        });
        let h = h.add(&h.adjoint()).unwrap().scale_real(0.5);
        let op = MultipartiteOperator::new(TensorSpace::bipartite(2, 3).unwrap(), h).unwrap();
        let d = short_time_data(&op, 2.0).unwrap();
        let ts = [1e-3, 2e-3, 4e-3];
        let pts = evolution_measure_series(&op, &ts, 2.0).unwrap();
        // ε/t² = a + b t²: intercept from the two smallest points.
        let y: Vec<f64> = pts.iter().map(|p| p.epsilon / (p.t * p.t)).collect();
        let a = (4.0 * y[0] - y[1]) / 3.0;
        assert!(((a - d.coeff) / d.coeff).abs() < 5e-3, "{a} vs {}", d.coeff);
    }

    #[test]
    fn ising_two_term_series() {
        let (h, j) = (1.0, 1.0);
        assert!((ising_quartic_coefficient(h, j, E) + 11.0 / 192.0).abs() < 1e-15);
        let t = 1e-2;
        let exact = crate::ising::epsilon_ising(h, j, t, 2.0);
        let approx = epsilon_ising_short_time(h, j, t, 2.0);
        assert!((exact - approx).abs() < 1e-12 * 10.0);
    }

    #[test]
    fn rejects_bad_input() {
        let op =
            MultipartiteOperator::new(TensorSpace::new(vec![2, 2, 2]).unwrap(), ComplexMatrix::identity(8)).unwrap();
        assert!(matches!(
            short_time_data(&op, 2.0),
            Err(Error::NotBipartite { factors: 3 })
        ));
        let nh = ComplexMatrix::from_fn(4, 4, |i, j| num_complex::Complex64::new((i + 2 * j) as f64, 0.0));
        let op = MultipartiteOperator::new(TensorSpace::bipartite(2, 2).unwrap(), nh).unwrap();
        assert!(matches!(short_time_data(&op, 2.0), Err(Error::NonHermitian { .. })));
    }
}
