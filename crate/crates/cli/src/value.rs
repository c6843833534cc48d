use std::f64::consts::PI;

/// Parses a real number written as a float, `pi`, `<k>pi`, `sqrt(<x>)`, or
/// a quotient `<a>/<b>` of those.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let d = atom(den)?;
        if d == 0.0 {
            return Err(format!("division by zero in `{s}`"));
        }
        return Ok(atom(num)? / d);
    }
    atom(s)
}

fn atom(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let bad = || format!("`{s}` is not a number");
    if let Some(rest) = s.strip_prefix('-') {
        return atom(rest).map(|v| -v);
    }
    if let Some(inner) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let x = atom(inner)?;
        if x < 0.0 {
            return Err(format!("sqrt of negative value in `{s}`"));
        }
        return Ok(x.sqrt());
    }
    if let Some(k) = s.strip_suffix("pi").or_else(|| s.strip_suffix('π')) {
        let k = k.trim_end_matches('*');
        return if k.is_empty() { Ok(PI) } else { Ok(atom(k)? * PI) };
    }
    let v: f64 = s.parse().map_err(|_| bad())?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}
