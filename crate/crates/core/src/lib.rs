//! Entanglement production by operators on tensor-product spaces.
//!
//! The central quantity compares an operator's Hilbert–Schmidt norm with that
//! of its non-entangling counterpart, the normalized tensor product of its
//! single-factor partial traces (see [`measure`]). Applied to evolution
//! operators `e^{-iHt}` it tracks how much entanglement the dynamics can
//! generate over time. The crate provides
//!
//! - dense complex matrices with a Hermitian eigensolver ([`matrix`], [`eigen`]),
//! - tensor-product bookkeeping and partial traces ([`tensor`]),
//! - the measure itself and its time series ([`measure`]),
//! - two-spin Heisenberg/Ising Hamiltonians and a multimode operator ([`spin`]),
//! - exact Ising formulas, singularities and periodicity ([`ising`]),
//! - the small-`t` expansion ([`short_time`]).

pub mod eigen;
pub mod error;
pub mod ising;
pub mod matrix;
pub mod measure;
pub mod short_time;
pub mod spin;
pub mod tensor;

pub use num_complex::Complex64;

pub use eigen::{evolution_operator, hermitian_eig, EigenDecomposition};
pub use error::{Error, Result};
pub use ising::{
    classify_periodicity, epsilon_ising, epsilon_ising_curve, epsilon_zero_field, ising_evolution_closed,
    ising_partial_norm_sq, ising_trace_sq, singularity_times, Periodicity, PeriodicityClassification,
    RationalTolerance, Singularity, SingularityFamily,
};
pub use matrix::ComplexMatrix;
pub use measure::{
    entanglement_probability, evolution_measure, evolution_measure_series, nonentangling_counterpart,
    production_measure, time_grid, CurvePoint, MeasureResult, DEFAULT_LOG_BASE,
};
pub use short_time::{epsilon_quadratic, short_time_data, ShortTimeData};
pub use spin::{heisenberg_hamiltonian, ising_hamiltonian, multimode_operator, spin_half_ops, SpinModelParams};
pub use tensor::{embed_local, partial_trace, product_state, MultipartiteOperator, StateVector, TensorSpace};
