use std::f64::consts::PI;
use std::io::{self, Write};

use evoent_core::ising::{ising_denominator, SINGULAR_TOLERANCE};
use evoent_core::measure::check_log_base;
use evoent_core::{
    classify_periodicity, epsilon_ising, epsilon_ising_curve, evolution_measure, evolution_measure_series,
    heisenberg_hamiltonian, ising_hamiltonian, multimode_operator, production_measure, singularity_times, time_grid,
    Complex64, Error, MeasureResult, MultipartiteOperator, Periodicity, RationalTolerance, SpinModelParams,
};

use crate::output::{fmt_complex, fmt_real, gnuplot_script, is_stdout, open, write_csv};
use crate::{ClassifyArgs, CliError, FigureArgs, MeasureArgs, Method, Model, ModelArgs, OutputArgs, SweepArgs};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn hamiltonian(m: &ModelArgs) -> Result<MultipartiteOperator, CliError> {
    match m.model {
        Model::Ising => {
            SpinModelParams::new(m.h, m.j, 0.0)?;
            Ok(ising_hamiltonian(m.h, m.j))
        }
        Model::Heisenberg => Ok(heisenberg_hamiltonian(&SpinModelParams::new(m.h, m.j, m.j1)?)),
        Model::Multimode => Err(usage(
            "the multimode model has no Hamiltonian; use `measure --model multimode --M <m>`",
        )),
    }
}

/// Explains why the Ising measure is undefined at `t`, if it is.
fn ising_singularity(h: f64, j: f64, t: f64) -> Option<String> {
    if j == 0.0 || ising_denominator(h, j, t) > SINGULAR_TOLERANCE {
        return None;
    }
    let mut msg = format!(
        "singular point at t={}: 1 + cos(ht)cos(Jt) vanishes, so Tr U(t) = 0 and the measure is undefined",
        fmt_real(t)
    );
    let horizon = t.abs() * (1.0 + 1e-9) + 1e-9;
    if let Ok(list) = singularity_times(h, j, horizon, RationalTolerance::default()) {
        if let Some(s) = list.iter().find(|s| (s.time - t.abs()).abs() <= 1e-9 * (1.0 + t.abs())) {
            msg.push_str(&format!(" (family {}, n={}, p={})", s.family, s.n, s.p));
        }
    }
    Some(msg)
}

fn write_result(out: &mut dyn Write, r: &MeasureResult) -> io::Result<()> {
    writeln!(out, "epsilon: {}", fmt_real(r.epsilon))?;
    writeln!(out, "norm_full: {}", fmt_real(r.norm_full))?;
    writeln!(out, "norm_counterpart: {}", fmt_real(r.norm_counterpart))?;
    writeln!(out, "trace: {}", fmt_complex(r.trace_full))?;
    writeln!(out, "log_base: {}", fmt_real(r.log_base))
}

pub fn measure(a: &MeasureArgs) -> Result<(), CliError> {
    let m = &a.model;
    check_log_base(m.log_base)?;
    let mut out = io::stdout().lock();
    if m.model == Model::Multimode {
        let dim = a.m.ok_or_else(|| usage("--M is required for the multimode model"))?;
        let c = Complex64::new(a.c, a.c_im);
        let r = production_measure(&multimode_operator(dim, c)?, m.log_base)?;
        writeln!(out, "model: multimode")?;
        writeln!(out, "M: {dim}")?;
        writeln!(out, "C: {}", fmt_complex(c))?;
        write_result(&mut out, &r)?;
        return Ok(());
    }

    let t = a.t.ok_or_else(|| usage("--t is required for spin models"))?;
    let ham = hamiltonian(m)?;
    if m.model == Model::Ising {
        if let Some(msg) = ising_singularity(m.h, m.j, t) {
            return Err(CliError::Undefined(msg));
        }
    }
    let r = evolution_measure(&ham, t, m.log_base).map_err(|e| match e {
        Error::ZeroTrace { .. } => {
            CliError::Undefined(format!("measure undefined at t={}: Tr U(t) vanishes", fmt_real(t)))
        }
        other => other.into(),
    })?;
    match m.model {
        Model::Ising => {
            writeln!(out, "model: ising")?;
            writeln!(out, "h: {}", fmt_real(m.h))?;
            writeln!(out, "J: {}", fmt_real(m.j))?;
        }
        _ => {
            writeln!(out, "model: heisenberg")?;
            writeln!(out, "h: {}", fmt_real(m.h))?;
            writeln!(out, "J: {}", fmt_real(m.j))?;
            writeln!(out, "J1: {}", fmt_real(m.j1))?;
        }
    }
    writeln!(out, "t: {}", fmt_real(t))?;
    write_result(&mut out, &r)?;
    if m.model == Model::Ising {
        writeln!(
            out,
            "epsilon_analytic: {}",
            fmt_real(epsilon_ising(m.h, m.j, t, m.log_base))
        )?;
    }
    Ok(())
}

struct SweepPlan<'a> {
    model: &'a ModelArgs,
    t_max: f64,
    steps: usize,
    method: Method,
    output: &'a OutputArgs,
    title: String,
}

fn run_sweep(p: &SweepPlan) -> Result<(), CliError> {
    let m = p.model;
    check_log_base(m.log_base)?;
    if m.model != Model::Ising && p.method != Method::Numerical {
        return Err(usage("--method analytic/both requires --model ising"));
    }
    if p.output.gnuplot.is_some() && is_stdout(&p.output.output) {
        return Err(usage("--gnuplot needs --output <file> to reference"));
    }
    let ham = hamiltonian(m)?;
    let grid = time_grid(p.t_max, p.steps)?;

    let analytic = || -> Vec<f64> {
        epsilon_ising_curve(m.h, m.j, &grid, m.log_base)
            .into_iter()
            .map(|c| c.epsilon)
            .collect()
    };
    let numerical = || -> Result<Vec<f64>, CliError> {
        Ok(evolution_measure_series(&ham, &grid, m.log_base)?
            .into_iter()
            .map(|c| c.epsilon)
            .collect())
    };
    let (header, columns) = match p.method {
        Method::Analytic => (vec!["t", "epsilon"], vec![analytic()]),
        Method::Numerical => (vec!["t", "epsilon"], vec![numerical()?]),
        Method::Both => (
            vec!["t", "epsilon", "epsilon_numerical"],
            vec![analytic(), numerical()?],
        ),
    };

    let mut out = open(&p.output.output)?;
    write_csv(&mut *out, &header, &grid, &columns)?;
    if let Some(script) = &p.output.gnuplot {
        std::fs::write(script, gnuplot_script(&p.output.output, &p.title, &header[1..]))?;
    }
    Ok(())
}

pub fn sweep(a: &SweepArgs) -> Result<(), CliError> {
    let method = a.method.unwrap_or(if a.model.model == Model::Ising {
        Method::Analytic
    } else {
        Method::Numerical
    });
    run_sweep(&SweepPlan {
        model: &a.model,
        t_max: a.t_max,
        steps: a.steps,
        method,
        output: &a.output,
        title: format!("{:?} h={} J={}", a.model.model, a.model.h, a.model.j).to_lowercase(),
    })
}

/// `(h/J, label)` of the reference curves.
fn figure_params(id: &str) -> Option<(f64, &'static str)> {
    Some(match id {
        "1a" => (1.0, "h/J = 1"),
        "1b" => (5.0 / 7.0, "h/J = 5/7"),
        "1c" => (7.0, "h/J = 7"),
        "1d" => (8.0, "h/J = 8"),
        "2a" => (2f64.sqrt(), "h/J = sqrt(2)"),
        "2b" => (3f64.sqrt() / 2.0, "h/J = sqrt(3)/2"),
        "2c" => (5f64.sqrt(), "h/J = sqrt(5)"),
        "2d" => (7f64.sqrt(), "h/J = sqrt(7)"),
        _ => return None,
    })
}

pub fn figure(a: &FigureArgs) -> Result<(), CliError> {
    let (h, label) =
        figure_params(&a.id).ok_or_else(|| usage(format!("unknown figure `{}` (expected 1a-1d or 2a-2d)", a.id)))?;
    let model = ModelArgs {
        model: Model::Ising,
        h,
        j: 1.0,
        j1: 0.0,
        log_base: 2.0,
    };
    run_sweep(&SweepPlan {
        model: &model,
        t_max: a.t_max,
        steps: a.steps,
        method: a.method,
        output: &a.output,
        title: format!("ising {label}"),
    })
}

/// `kπ` in units of `1/|J|`, e.g. `7π` or `2π/|J|`.
fn pi_multiple(period: f64, j: f64) -> String {
    let k = (period * j.abs() / PI).round();
    let unit = if j.abs() == 1.0 { "π" } else { "π/|J|" };
    if k == 1.0 {
        unit.to_string()
    } else {
        format!("{k}{unit}")
    }
}

pub fn classify(a: &ClassifyArgs) -> Result<(), CliError> {
    if a.j == 0.0 {
        return Err(usage(
            "no interaction (J = 0): the measure vanishes identically for all t",
        ));
    }
    let tol = RationalTolerance::default();
    let c = classify_periodicity(a.h, a.j, tol)?;
    let horizon = a.t_max.unwrap_or(8.0 * PI / a.j.abs());
    let singular = singularity_times(a.h, a.j, horizon, tol)?;

    let mut out = io::stdout().lock();
    let (t1, t2, t3) = c.periods;
    match c.kind {
        Periodicity::Periodic { period } => {
            writeln!(out, "Periodic, T={} ({})", pi_multiple(period, a.j), fmt_real(period))?;
        }
        Periodicity::QuasiPeriodic => {
            writeln!(
                out,
                "QuasiPeriodic, T₁={}, T₂={}, T₃={}",
                fmt_real(t1),
                fmt_real(t2),
                fmt_real(t3)
            )?;
        }
    }
    writeln!(out, "h: {}", fmt_real(a.h))?;
    writeln!(out, "J: {}", fmt_real(a.j))?;
    writeln!(out, "h/J: {}", fmt_real(a.h / a.j))?;
    match c.ratio {
        Some((p, q)) => writeln!(out, "rational: |h/J| = {p}/{q}")?,
        None => writeln!(out, "rational: none (denominator ≤ {})", tol.max_denominator)?,
    }
    writeln!(out, "T1 = π/|h|: {}", fmt_real(t1))?;
    writeln!(out, "T2 = 2π/|h+J|: {}", fmt_real(t2))?;
    writeln!(out, "T3 = 2π/|h-J|: {}", fmt_real(t3))?;
    if singular.is_empty() {
        writeln!(out, "singularities in [0, {}]: none", fmt_real(horizon))?;
    } else {
        writeln!(out, "singularities in [0, {}]:", fmt_real(horizon))?;
        for s in &singular {
            writeln!(
                out,
                "  t={} ({})  n={} p={}  {}",
                fmt_real(s.time),
                pi_multiple(s.time, a.j),
                s.n,
                s.p,
                s.family
            )?;
        }
    }
    Ok(())
}
