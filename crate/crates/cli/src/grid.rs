//! Value grids given on the command line: `0,1e2,1e3`, `lin:0:1:11` or
//! `log:0.01:0.2:8`.

use crate::error::{CliError, Result};

pub fn parse_grid(flag: &str, text: &str) -> Result<Vec<f64>> {
    let bad = |why: String| CliError::Usage(format!("--{flag} `{text}`: {why}"));
    let number = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(format!("`{s}` is not a number")));
    let values = if let Some(rest) = text.strip_prefix("lin:").or_else(|| text.strip_prefix("log:")) {
        let parts: Vec<&str> = rest.split(':').collect();
        let [start, stop, count] = parts[..] else {
            return Err(bad("ranges take start:stop:count".into()));
        };
        let (start, stop) = (number(start)?, number(stop)?);
        let count: usize = count.trim().parse().map_err(|_| bad(format!("`{count}` is not a count")))?;
        if count < 2 {
            return Err(bad("ranges need at least two points".into()));
        }
        let frac = |k: usize| k as f64 / (count - 1) as f64;
        if text.starts_with("log:") {
            if !(start > 0.0 && stop > 0.0) {
                return Err(bad("log ranges need positive end points".into()));
            }
            let (a, b) = (start.ln(), stop.ln());
            (0..count)
                .map(|k| match k {
                    0 => start,
                    k if k == count - 1 => stop,
                    k => (a + (b - a) * frac(k)).exp(),
                })
                .collect()
        } else {
            (0..count).map(|k| if k == count - 1 { stop } else { start + (stop - start) * frac(k) }).collect()
        }
    } else {
        text.split(',').map(number).collect::<Result<Vec<f64>>>()?
    };
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(bad("values must be finite".into()));
    }
    Ok(values)
}
