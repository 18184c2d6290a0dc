//! Grid arguments: `start:step:stop`, a comma list, or a single value.

use std::fmt;
use std::str::FromStr;

/// Hard cap so a typo like `0:1e-12:1` fails fast instead of allocating.
const MAX_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    /// Values start + i·step, keeping points that pass stop by less than half a step.
    Range { start: f64, step: f64, stop: f64 },
    List(Vec<f64>),
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Grid::List(v) => v.clone(),
            Grid::Range { start, step, stop } => {
                let last = ((stop - start) / step + 0.5).ceil() as usize - 1;
                (0..=last).map(|i| start + i as f64 * step).collect()
            }
        }
    }

    /// The single value of a one-point grid.
    pub fn scalar(&self) -> Option<f64> {
        match self {
            Grid::List(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }
}

/// Shortest round-trip text for a float, switching to exponent form for very
/// small or large magnitudes.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn number(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if !x.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(x)
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty grid".into());
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [single] => {
                let v = single.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
                Ok(Grid::List(v))
            }
            [a, b, c] => {
                let (start, step, stop) = (number(a)?, number(b)?, number(c)?);
                if step == 0.0 {
                    return Err(format!("grid '{s}' has zero step"));
                }
                let span = (stop - start) / step;
                if span <= -0.5 {
                    return Err(format!("grid '{s}': step points away from stop"));
                }
                if span + 1.5 > MAX_POINTS as f64 {
                    return Err(format!("grid '{s}' has more than {MAX_POINTS} points"));
                }
                Ok(Grid::Range { start, step, stop })
            }
            _ => Err(format!("grid '{s}' must be start:step:stop or a comma list")),
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grid::Range { start, step, stop } => write!(f, "{}:{}:{}", fmt_f64(*start), fmt_f64(*step), fmt_f64(*stop)),
            Grid::List(v) => f.write_str(&v.iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>().join(",")),
        }
    }
}
