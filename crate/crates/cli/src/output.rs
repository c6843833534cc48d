use std::fs::File;
use std::io::{self, BufWriter, Write};

use evoent_core::Complex64;

/// Fixed-point with 12 decimals; `inf` for infinities and no negative zero.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    let im = fmt_real(z.im);
    match im.strip_prefix('-') {
        Some(abs) => format!("{} - {abs}i", fmt_real(z.re)),
        None => format!("{} + {im}i", fmt_real(z.re)),
    }
}

pub fn is_stdout(target: &str) -> bool {
    target == "stdout" || target == "-"
}

pub fn open(target: &str) -> io::Result<Box<dyn Write>> {
    if is_stdout(target) {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        Ok(Box::new(BufWriter::new(File::create(target)?)))
    }
}

/// Writes `header` followed by one row per time: `t` and then each column.
pub fn write_csv(out: &mut dyn Write, header: &[&str], times: &[f64], columns: &[Vec<f64>]) -> io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    let mut line = String::new();
    for (i, &t) in times.iter().enumerate() {
        line.clear();
        line.push_str(&fmt_real(t));
        for col in columns {
            line.push(',');
            line.push_str(&fmt_real(col[i]));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    out.flush()
}

pub fn gnuplot_script(csv_path: &str, title: &str, columns: &[&str]) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set datafile missing 'inf'\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str("set xlabel 't'\n");
    s.push_str("set ylabel 'epsilon'\n");
    s.push_str(&format!("set title '{title}'\n"));
    let plots: Vec<String> = columns
        .iter()
        .enumerate()
        .map(|(k, _)| format!("'{csv_path}' using 1:{} with lines", k + 2))
        .collect();
    s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    s
}
