//! Closed-form results for the two-spin Ising Hamiltonian
//! `H = −h(S₁^z + S₂^z) + 2J S₁^z S₂^z`.
//!
//! The Zeeman and interaction parts commute, so `e^{-iHt}` factorizes, and
//! both factors sum to trigonometric polynomials of the operators because
//! `H₀³ = h²H₀` and `H_int² = (J/2)²`. Everything downstream (partial traces,
//! norms, the trace and the measure itself) follows in closed form:
//!
//! ```text
//! ‖U_j(t)‖² = 4 [1 + cos(ht) cos(Jt)]
//! |Tr U(t)|² = 4 [1 + cos²(ht) + 2 cos(ht) cos(Jt)]
//! ε(t)       = log( √(1 + cos²(ht) + 2cos(ht)cos(Jt)) / (1 + cos(ht)cos(Jt)) )
//! ```
//!
//! `ε` diverges where `1 + cos(ht)cos(Jt)` vanishes, which needs
//! `h/J = 2p/(1+2n)` at `t = (1+2n)π/|J|` or `h/J = (1+2n)/(2p)` at
//! `t = 2pπ/|J|`, plus the zero-field case `h = 0` at every odd multiple of
//! `π/|J|`. For rational `h/J = p/q` the curve is periodic with period `πq/|J|`
//! when `p` and `q` are both odd and `2πq/|J|` otherwise; for irrational ratios
//! it is quasi-periodic with the three periods `π/|h|`, `2π/|h+J|`,
//! `2π/|h−J|`.
//!
//! All times here are absolute (ħ = 1). With `J = 1` they read directly in
//! units of `1/J`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, I};
use crate::measure::CurvePoint;
use crate::spin::{spin_half_ops, zeeman_shape, zz_coupling};

/// `1 + cos(ht)cos(Jt)` at or below this value counts as a singular point.
pub const SINGULAR_TOLERANCE: f64 = 1e-12;

/// `e^{-iH₀t} = 1 + (H₀/h)²[cos(ht) − 1] − i (H₀/h) sin(ht)`.
pub fn zeeman_propagator(h: f64, t: f64) -> ComplexMatrix {
    let z = zeeman_shape();
    let z2 = z.matmul(&z).expect("4x4");
    let (s, c) = (h * t).sin_cos();
    ComplexMatrix::identity(4)
        .add(&z2.scale_real(c - 1.0))
        .and_then(|m| m.sub(&z.scale(I * s)))
        .expect("4x4")
}

/// `e^{-iH_int t} = cos(Jt/2) − 2i (H_int/J) sin(Jt/2)`.
pub fn interaction_propagator(j: f64, t: f64) -> ComplexMatrix {
    let k = zz_coupling().scale_real(2.0);
    let (s, c) = (0.5 * j * t).sin_cos();
    ComplexMatrix::identity(4)
        .scale_real(c)
        .sub(&k.scale(I * (2.0 * s)))
        .expect("4x4")
}

/// Closed-form `U(t)` expanded into the four real/imaginary blocks.
///
/// Uses `(H₀/h)(H_int/J) = ½ H₀/h` and `(H₀/h)²(H_int/J) = ½ (H₀/h)²` to
/// collapse the product of the two factors.
pub fn ising_evolution_closed(h: f64, j: f64, t: f64) -> ComplexMatrix {
    let z = zeeman_shape();
    let z2 = z.matmul(&z).expect("4x4");
    let k2 = zz_coupling().scale_real(4.0);
    let id = ComplexMatrix::identity(4);
    let (sh, ch) = (h * t).sin_cos();
    let (sj, cj) = (0.5 * j * t).sin_cos();

    let even = id.add(&z2.scale_real(ch - 1.0)).expect("4x4");
    let real_part = even.scale_real(cj).sub(&z.scale_real(sh * sj)).expect("4x4");
    let imag_part = k2
        .add(&z2.scale_real(ch - 1.0))
        .expect("4x4")
        .scale_real(sj)
        .add(&z.scale_real(sh * cj))
        .expect("4x4");
    real_part.sub(&imag_part.scale(I)).expect("4x4")
}

/// Reduced propagator `U_j(t)` on either spin (the two coincide).
pub fn ising_partial_propagator(h: f64, j: f64, t: f64) -> ComplexMatrix {
    let sz2 = spin_half_ops().z.scale_real(2.0);
    let id = ComplexMatrix::identity(2);
    let (sh, ch) = (h * t).sin_cos();
    let (sj, cj) = (0.5 * j * t).sin_cos();
    let scalar = Complex64::new((1.0 + ch) * cj, (1.0 - ch) * sj);
    let spin = Complex64::new(sh * sj, sh * cj);
    id.scale(scalar).add(&sz2.scale(spin)).expect("2x2")
}

/// `‖U_j(t)‖² = 4[1 + cos(ht)cos(Jt)]`.
pub fn ising_partial_norm_sq(h: f64, j: f64, t: f64) -> f64 {
    4.0 * ising_denominator(h, j, t)
}

/// `Tr U(t) = 2[1 + cos(ht)]cos(Jt/2) + 2i[1 − cos(ht)]sin(Jt/2)`.
pub fn ising_trace(h: f64, j: f64, t: f64) -> Complex64 {
    let ch = (h * t).cos();
    let (sj, cj) = (0.5 * j * t).sin_cos();
    Complex64::new(2.0 * (1.0 + ch) * cj, 2.0 * (1.0 - ch) * sj)
}

/// `|Tr U(t)|² = 4[1 + cos²(ht) + 2cos(ht)cos(Jt)]`.
pub fn ising_trace_sq(h: f64, j: f64, t: f64) -> f64 {
    let ch = (h * t).cos();
    let cj = (j * t).cos();
    4.0 * (1.0 + ch * ch + 2.0 * ch * cj)
}

/// `1 + cos(ht)cos(Jt)`; `ε` diverges where it vanishes.
pub fn ising_denominator(h: f64, j: f64, t: f64) -> f64 {
    1.0 + (h * t).cos() * (j * t).cos()
}

/// Closed-form `ε(t)` for the Ising propagator, in units of `log_base`.
///
/// Returns `f64::INFINITY` at singular points. Evaluated as
/// `½ log(1 + cos²(ht) sin²(Jt) / (1 + cos(ht)cos(Jt))²)`, which equals the
/// textbook ratio because `1 + x² + 2xy − (1 + xy)² = x²(1 − y²)`, and keeps
/// full relative precision as `t → 0`. Nonnegative by construction.
pub fn epsilon_ising(h: f64, j: f64, t: f64, log_base: f64) -> f64 {
    debug_assert!(log_base > 1.0);
    let ch = (h * t).cos();
    let (sj, cj) = (j * t).sin_cos();
    let den = 1.0 + ch * cj;
    if den <= SINGULAR_TOLERANCE {
        return f64::INFINITY;
    }
    let q = (ch * sj / den).powi(2);
    0.5 * q.ln_1p() / log_base.ln()
}

/// Zero-field limit `ε(t) = ½ log(2 / (1 + cos(Jt)))`.
///
/// Diverges at `t = (1+2n)π/|J|`. Evaluated as `−½ log(1 − sin²(Jt/2))`.
pub fn epsilon_zero_field(j: f64, t: f64, log_base: f64) -> f64 {
    debug_assert!(log_base > 1.0);
    let (s, c) = (0.5 * j * t).sin_cos();
    if 2.0 * c * c <= SINGULAR_TOLERANCE {
        return f64::INFINITY;
    }
    -0.5 * (-s * s).ln_1p() / log_base.ln()
}

/// Closed-form curve on a time grid; `h == 0` uses the zero-field formula.
pub fn epsilon_ising_curve(h: f64, j: f64, times: &[f64], log_base: f64) -> Vec<CurvePoint> {
    times
        .par_iter()
        .map(|&t| CurvePoint {
            t,
            epsilon: if h == 0.0 {
                epsilon_zero_field(j, t, log_base)
            } else {
                epsilon_ising(h, j, t, log_base)
            },
        })
        .collect()
}

/// Limits for recognizing `|h/J|` as a rational `p/q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalTolerance {
    pub max_denominator: u64,
    /// Largest accepted `|x − p/q|`.
    pub tolerance: f64,
}

impl Default for RationalTolerance {
    /// Denominators up to 1000 within 1e-9. A cap of 10⁶ would let the
    /// convergent 47321/33461 of √2 (off by 3e-10) pass as rational.
    fn default() -> Self {
        Self {
            max_denominator: 1000,
            tolerance: 1e-9,
        }
    }
}

/// First continued-fraction convergent `p/q` of `x ≥ 0` with
/// `q ≤ max_denominator` and `|x − p/q| ≤ tolerance`. Convergents are in
/// lowest terms.
pub fn rational_approximation(x: f64, tol: RationalTolerance) -> Option<(u64, u64)> {
    if !x.is_finite() || x < 0.0 {
        return None;
    }
    let max_den = tol.max_denominator as f64;
    let (mut p_prev, mut q_prev) = (1.0_f64, 0.0_f64);
    let (mut p_prev2, mut q_prev2) = (0.0_f64, 1.0_f64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let q = a * q_prev + q_prev2;
        if q > max_den {
            return None;
        }
        let p = a * p_prev + p_prev2;
        if (x - p / q).abs() <= tol.tolerance {
            return Some((p as u64, q as u64));
        }
        let frac = r - a;
        if frac <= 0.0 {
            return None;
        }
        r = 1.0 / frac;
        (p_prev2, q_prev2, p_prev, q_prev) = (p_prev, q_prev, p, q);
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Periodicity {
    Periodic { period: f64 },
    QuasiPeriodic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicityClassification {
    pub kind: Periodicity,
    /// `(π/|h|, 2π/|h+J|, 2π/|h−J|)`; infinite entries where a frequency is zero.
    pub periods: (f64, f64, f64),
    /// `|h/J| = p/q` in lowest terms, when recognized as rational.
    pub ratio: Option<(u64, u64)>,
}

impl PeriodicityClassification {
    pub fn period(&self) -> Option<f64> {
        match self.kind {
            Periodicity::Periodic { period } => Some(period),
            Periodicity::QuasiPeriodic => None,
        }
    }
}

fn period_of(omega: f64, numerator: f64) -> f64 {
    if omega == 0.0 {
        f64::INFINITY
    } else {
        numerator / omega.abs()
    }
}

pub fn classify_periodicity(h: f64, j: f64, tol: RationalTolerance) -> Result<PeriodicityClassification> {
    if !h.is_finite() || !j.is_finite() {
        return Err(Error::InvalidParameter(format!("h={h}, J={j} must be finite")));
    }
    if j == 0.0 {
        return Err(Error::NoInteraction);
    }
    let periods = (period_of(h, PI), period_of(h + j, 2.0 * PI), period_of(h - j, 2.0 * PI));
    let ratio = rational_approximation((h / j).abs(), tol);
    let kind = match ratio {
        Some((p, q)) => {
            let multiple = if p % 2 == 1 && q % 2 == 1 { PI } else { 2.0 * PI };
            Periodicity::Periodic {
                period: multiple * q as f64 / j.abs(),
            }
        }
        None => Periodicity::QuasiPeriodic,
    };
    Ok(PeriodicityClassification { kind, periods, ratio })
}

/// Which condition makes `1 + cos(ht)cos(Jt)` vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularityFamily {
    /// `h/J = 2p/(1+2n)`, `t = (1+2n)π/|J|`.
    OddInteractionPhase,
    /// `h/J = (1+2n)/(2p)`, `t = 2pπ/|J|`.
    EvenInteractionPhase,
    /// `h = 0`, `t = (1+2n)π/|J|`; `p` is reported as 0.
    ZeroField,
}

impl fmt::Display for SingularityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularityFamily::OddInteractionPhase => "h/J = 2p/(1+2n), t = (1+2n)π/|J|",
            SingularityFamily::EvenInteractionPhase => "h/J = (1+2n)/(2p), t = 2pπ/|J|",
            SingularityFamily::ZeroField => "h = 0, t = (1+2n)π/|J|",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Singularity {
    pub family: SingularityFamily,
    pub n: u64,
    pub p: u64,
    pub time: f64,
}

/// Upper bound on enumerated multiples of `π/|J|`.
const MAX_SINGULARITY_SCAN: f64 = 1e7;

/// All singular times in `[0, t_max]`, sorted by time.
pub fn singularity_times(h: f64, j: f64, t_max: f64, tol: RationalTolerance) -> Result<Vec<Singularity>> {
    if !h.is_finite() || !j.is_finite() || !t_max.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "h={h}, J={j}, t_max={t_max} must be finite"
        )));
    }
    if j == 0.0 {
        return Err(Error::NoInteraction);
    }
    let unit = PI / j.abs();
    let max_multiple = (t_max / unit).floor();
    if max_multiple > MAX_SINGULARITY_SCAN {
        return Err(Error::InvalidParameter(format!(
            "t_max={t_max} spans more than {MAX_SINGULARITY_SCAN} multiples of π/|J|"
        )));
    }
    let mut out = Vec::new();
    if max_multiple < 1.0 {
        return Ok(out);
    }
    let max_multiple = max_multiple as u64;
    let r = (h / j).abs();

    if h == 0.0 {
        for odd in (1..=max_multiple).step_by(2) {
            out.push(Singularity {
                family: SingularityFamily::ZeroField,
                n: (odd - 1) / 2,
                p: 0,
                time: odd as f64 * unit,
            });
        }
        return Ok(out);
    }

    for odd in (1..=max_multiple).step_by(2) {
        let p = (r * odd as f64 / 2.0).round();
        if p >= 1.0 && (r - 2.0 * p / odd as f64).abs() <= tol.tolerance {
            out.push(Singularity {
                family: SingularityFamily::OddInteractionPhase,
                n: (odd - 1) / 2,
                p: p as u64,
                time: odd as f64 * unit,
            });
        }
    }
    for even in (2..=max_multiple).step_by(2) {
        let p = even / 2;
        let odd = (2.0 * p as f64 * r).round();
        if odd >= 1.0 && odd % 2.0 == 1.0 && (r - odd / (2.0 * p as f64)).abs() <= tol.tolerance {
            out.push(Singularity {
                family: SingularityFamily::EvenInteractionPhase,
                n: ((odd - 1.0) / 2.0) as u64,
                p,
                time: even as f64 * unit,
            });
        }
    }
    out.sort_by(|a, b| a.time.total_cmp(&b.time));
    Ok(out)
}

/// Largest `|v[i + shift] − v[i]|` over a sampled curve. Pairs that are both
/// infinite match; a finite/infinite pair counts as an infinite deviation.
pub fn shift_deviation(values: &[f64], shift: usize) -> f64 {
    if shift >= values.len() {
        return f64::INFINITY;
    }
    values
        .iter()
        .zip(&values[shift..])
        .map(|(&a, &b)| match (a.is_finite(), b.is_finite()) {
            (true, true) => (a - b).abs(),
            (false, false) => 0.0,
            _ => f64::INFINITY,
        })
        .fold(0.0, f64::max)
}

/// Smallest grid shift in `1..=max_shift` under which the sampled curve
/// repeats within `tol`.
pub fn smallest_period_shift(values: &[f64], max_shift: usize, tol: f64) -> Option<usize> {
    (1..=max_shift).find(|&k| shift_deviation(values, k) <= tol)
}
