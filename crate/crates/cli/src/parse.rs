//! Argument value syntax: exact rationals, index ranges and grids.

use ineqverify_core::Rational;

pub type ParseResult<T> = Result<T, String>;

const MAX_GRID_POINTS: usize = 100_000;

pub fn rational(s: &str) -> ParseResult<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| format!("'{s}' is not an exact rational (expected p or p/q)"))
}

pub fn positive_rational(s: &str) -> ParseResult<Rational> {
    let r = rational(s)?;
    if r.is_positive() {
        Ok(r)
    } else {
        Err(format!("alpha must be positive, got {r}"))
    }
}

/// Comma-separated items, each `p/q` or `start:stop:step`; every value must be positive.
pub fn alpha_grid(s: &str) -> ParseResult<Vec<Rational>> {
    let mut values = Vec::new();
    for item in s.split(',') {
        if item.contains(':') {
            values.extend(grid(item)?);
        } else {
            values.push(rational(item)?);
        }
        if values.len() > MAX_GRID_POINTS {
            return Err(format!("'{s}' has more than {MAX_GRID_POINTS} points"));
        }
    }
    if let Some(bad) = values.iter().find(|a| !a.is_positive()) {
        return Err(format!("alpha must be positive, got {bad}"));
    }
    values.sort();
    values.dedup();
    Ok(values)
}

fn grid(s: &str) -> ParseResult<Vec<Rational>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(format!("grid '{s}' must have the form start:stop:step"));
    };
    let (start, stop, step) = (rational(start)?, rational(stop)?, rational(step)?);
    if !step.is_positive() {
        return Err(format!("grid step must be positive, got {step}"));
    }
    if start > stop {
        return Err(format!("grid start {start} exceeds stop {stop}"));
    }
    let mut out = Vec::new();
    let mut x = start;
    while x <= stop {
        if out.len() == MAX_GRID_POINTS {
            return Err(format!("grid '{s}' has more than {MAX_GRID_POINTS} points"));
        }
        out.push(x.clone());
        x = x + step.clone();
    }
    Ok(out)
}

/// `a..b`, `a..=b` (both inclusive), `a,b,c` or a single index.
pub fn index_set(s: &str) -> ParseResult<Vec<u32>> {
    let int = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("'{t}' is not a non-negative integer"))
    };
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (int(lo)?, int(hi)?);
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        return Ok((lo..=hi).collect());
    }
    let mut out = s.split(',').map(int).collect::<ParseResult<Vec<_>>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Positive reals, written as exact rationals or decimals.
pub fn positive_reals(s: &str) -> ParseResult<Vec<f64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let v = match t.parse::<Rational>() {
                Ok(r) => r.to_f64(),
                Err(_) => t.parse::<f64>().map_err(|_| format!("'{t}' is not a number"))?,
            };
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(format!("expected a positive finite value, got '{t}'"))
            }
        })
        .collect()
}
