//! Parsers for degree ranges and sweep grids, and the numeric formatting
//! shared by all CSV output.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range {
    pub lo: usize,
    pub hi: usize,
}

impl Range {
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

/// `5` or `2..10` (inclusive).
pub fn parse_range(s: &str) -> Result<Range, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("'{t}' is not a non-negative integer"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(Range { lo, hi })
}

/// Sweep grid, increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid(pub Vec<usize>);

/// `a:b` gives every integer in `[a, b]`; `a:b:xS` gives `a, aS, aS², …`
/// rounded and deduplicated, up to `b`.
pub fn parse_grid(s: &str) -> Result<Grid, String> {
    grid_points(s).map(Grid)
}

fn grid_points(s: &str) -> Result<Vec<usize>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("'{t}' is not a non-negative integer"))
    };
    let (a, b) = match parts.as_slice() {
        [a, b] | [a, b, _] => (num(a)?, num(b)?),
        _ => return Err(format!("grid '{s}' must look like a:b or a:b:xS")),
    };
    if a == 0 || a > b {
        return Err(format!("grid bounds {a}:{b} must satisfy 1 <= a <= b"));
    }
    let Some(step) = parts.get(2) else {
        return Ok((a..=b).collect());
    };
    let factor: f64 = step
        .strip_prefix('x')
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| format!("grid step '{step}' must look like xS"))?;
    if factor <= 1.0 || !factor.is_finite() {
        return Err(format!("grid factor {factor} must exceed 1"));
    }
    let mut out: Vec<usize> = Vec::new();
    let mut x = a as f64;
    while x.round() <= b as f64 {
        let v = x.round() as usize;
        if out.last() != Some(&v) {
            out.push(v);
        }
        x *= factor;
    }
    Ok(out)
}

/// Twelve significant digits, trailing zeros trimmed.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}
