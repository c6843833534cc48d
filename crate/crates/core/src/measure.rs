//! Entanglement-production measure of operators on multipartite spaces.
//!
//! For an operator `A` on `⊗ H_i` with single-factor reductions
//! `A_i = Tr_{H/H_i} A`, the non-entangling counterpart is
//! `A^⊗ = (⊗ A_i) / (Tr A)^{N-1}`, which has the same trace as `A`. The
//! measure is `ε(A) = log(‖A‖ / ‖A^⊗‖)` in the Hilbert–Schmidt norm, which
//! expands to `log(‖A‖ · |Tr A|^{N-1} / ∏ ‖A_i‖)` without ever building the
//! tensor product.
//!
//! The measure is undefined when `Tr A` vanishes; [`production_measure`]
//! reports that as [`Error::ZeroTrace`] while the time series turns it into an
//! `f64::INFINITY` marker.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::eigen::{hermitian_eig, HERMITIAN_TOLERANCE};
use crate::error::{Error, Result};
use crate::tensor::{MultipartiteOperator, StateVector};

pub const DEFAULT_LOG_BASE: f64 = 2.0;

/// `|Tr A|` at or below this multiple of `‖A‖` counts as zero.
pub const ZERO_TRACE_RELATIVE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureResult {
    /// `ε` in units of `log_base` (bits for base 2). May be negative for
    /// general non-unitary operators.
    pub epsilon: f64,
    pub log_base: f64,
    /// `‖A‖`.
    pub norm_full: f64,
    /// `‖A^⊗‖`.
    pub norm_counterpart: f64,
    pub trace_full: Complex64,
}

/// A `(t, ε(t))` sample; `epsilon` is `f64::INFINITY` at singular times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub t: f64,
    pub epsilon: f64,
}

/// `steps` evenly spaced times `t_i = t_max · i / (steps − 1)`.
pub fn time_grid(t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 || !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "time grid needs steps >= 2 and finite t_max > 0 (got steps={steps}, t_max={t_max})"
        )));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps).map(|i| t_max * i as f64 / last).collect())
}

pub fn check_log_base(log_base: f64) -> Result<()> {
    if log_base.is_finite() && log_base > 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "log base must be finite and > 1, got {log_base}"
        )))
    }
}

fn checked_trace(op: &MultipartiteOperator) -> Result<Complex64> {
    let trace = op.trace();
    let tolerance = ZERO_TRACE_RELATIVE_TOLERANCE * op.hs_norm();
    if trace.norm() <= tolerance {
        return Err(Error::ZeroTrace {
            trace_abs: trace.norm(),
            tolerance,
        });
    }
    Ok(trace)
}

fn reductions(op: &MultipartiteOperator) -> Result<Vec<MultipartiteOperator>> {
    (0..op.space().factors()).map(|i| op.partial_trace(i)).collect()
}

/// `A^⊗ = (⊗_i Tr_{H/H_i} A) / (Tr A)^{N-1}`.
pub fn nonentangling_counterpart(op: &MultipartiteOperator) -> Result<MultipartiteOperator> {
    let trace = checked_trace(op)?;
    let factors: Vec<_> = reductions(op)?.into_iter().map(|r| r.into_matrix()).collect();
    let n = factors.len() as i32;
    let product = MultipartiteOperator::product(&factors)?;
    let scale = trace.powi(n - 1).inv();
    MultipartiteOperator::new(op.space().clone(), product.matrix().scale(scale))
}

/// `ε(A)` from the traces and norms of the reductions.
pub fn production_measure(op: &MultipartiteOperator, log_base: f64) -> Result<MeasureResult> {
    check_log_base(log_base)?;
    let trace = checked_trace(op)?;
    let norm_full = op.hs_norm();
    let n = op.space().factors();

    // ln ‖A^⊗‖ = Σ ln ‖A_i‖ − (N−1) ln |Tr A|
    let ln_counterpart =
        reductions(op)?.iter().map(|r| r.hs_norm().ln()).sum::<f64>() - (n as f64 - 1.0) * trace.norm().ln();
    let epsilon = (norm_full.ln() - ln_counterpart) / log_base.ln();

    let result = MeasureResult {
        epsilon,
        log_base,
        norm_full,
        norm_counterpart: ln_counterpart.exp(),
        trace_full: trace,
    };

    #[cfg(debug_assertions)]
    {
        let direct = production_measure_materialized(op, log_base)?;
        debug_assert!(
            (direct.epsilon - result.epsilon).abs() <= 1e-8 * (1.0 + result.epsilon.abs()),
            "measure routes disagree: {} vs {}",
            result.epsilon,
            direct.epsilon
        );
    }

    Ok(result)
}

/// `ε(A)` computed as `log(‖A‖ / ‖A^⊗‖)` with the counterpart built
/// explicitly. Cost grows with the square of the full dimension; used as a
/// cross-check of [`production_measure`].
pub fn production_measure_materialized(op: &MultipartiteOperator, log_base: f64) -> Result<MeasureResult> {
    check_log_base(log_base)?;
    let counterpart = nonentangling_counterpart(op)?;
    let norm_full = op.hs_norm();
    let norm_counterpart = counterpart.hs_norm();
    Ok(MeasureResult {
        epsilon: (norm_full / norm_counterpart).ln() / log_base.ln(),
        log_base,
        norm_full,
        norm_counterpart,
        trace_full: op.trace(),
    })
}

fn check_generator(h: &MultipartiteOperator) -> Result<()> {
    let deviation = h.matrix().hermitian_deviation();
    if deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NonHermitian { deviation });
    }
    Ok(())
}

/// `ε(U(t))` for `U(t) = e^{-iHt}` on each time of the grid.
///
/// The generator is diagonalized once. Points are evaluated in parallel and
/// returned in input order; times where the propagator's trace vanishes yield
/// an infinite `epsilon`.
pub fn evolution_measure_series(h: &MultipartiteOperator, times: &[f64], log_base: f64) -> Result<Vec<CurvePoint>> {
    check_log_base(log_base)?;
    check_generator(h)?;
    if let Some(&t) = times.iter().find(|t| !t.is_finite()) {
        return Err(Error::InvalidParameter(format!("time {t} is not finite")));
    }
    let eig = hermitian_eig(h.matrix())?;
    times
        .par_iter()
        .map(|&t| {
            let u = MultipartiteOperator::new(h.space().clone(), eig.propagator(t))?;
            let epsilon = match production_measure(&u, log_base) {
                Ok(m) => m.epsilon,
                Err(Error::ZeroTrace { .. }) => f64::INFINITY,
                Err(e) => return Err(e),
            };
            Ok(CurvePoint { t, epsilon })
        })
        .collect()
}

/// Measure of `U(t)` at a single time, keeping norms and trace.
pub fn evolution_measure(h: &MultipartiteOperator, t: f64, log_base: f64) -> Result<MeasureResult> {
    check_generator(h)?;
    let u = MultipartiteOperator::new(h.space().clone(), hermitian_eig(h.matrix())?.propagator(t))?;
    production_measure(&u, log_base)
}

/// Return probability `|⟨ψ₀|U(t)|ψ₀⟩|²`.
pub fn entanglement_probability(h: &MultipartiteOperator, psi0: &StateVector, t: f64) -> Result<f64> {
    check_generator(h)?;
    if psi0.amplitudes().len() != h.space().total_dim() {
        return Err(Error::InvalidLength {
            len: psi0.amplitudes().len(),
            expected: h.space().total_dim(),
        });
    }
    if !psi0.is_normalized() {
        return Err(Error::NotNormalized { norm: psi0.norm() });
    }
    let u = hermitian_eig(h.matrix())?.propagator(t);
    let evolved = psi0.apply(&u)?;
    Ok(psi0.inner(&evolved)?.norm_sqr().min(1.0))
}
