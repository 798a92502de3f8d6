//! Mixing-parameter grids given as `value` or `start:end:step`.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RSpec {
    Value(f64),
    Range { start: f64, end: f64, step: f64 },
}

impl Default for RSpec {
    fn default() -> Self {
        RSpec::Range {
            start: 0.0,
            end: 1.0,
            step: 0.001,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridError(pub String);

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for GridError {}

fn parse_f64(s: &str) -> Result<f64, GridError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| GridError(format!("not a number: {s:?}")))?;
    if !v.is_finite() {
        return Err(GridError(format!("not finite: {s:?}")));
    }
    Ok(v)
}

impl FromStr for RSpec {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(RSpec::Value(parse_f64(v)?)),
            [a, b, c] => {
                let (start, end, step) = (parse_f64(a)?, parse_f64(b)?, parse_f64(c)?);
                if start >= end {
                    return Err(GridError(format!(
                        "grid start {start} must be below end {end}"
                    )));
                }
                if step <= 0.0 {
                    return Err(GridError(format!("grid step {step} must be positive")));
                }
                Ok(RSpec::Range { start, end, step })
            }
            _ => Err(GridError(format!(
                "expected <float> or <start:end:step>, got {s:?}"
            ))),
        }
    }
}

impl RSpec {
    /// Grid points in increasing order. Points are `start + k * step`; the
    /// endpoint is included when it lies on the grid up to rounding.
    pub fn values(&self) -> Vec<f64> {
        match *self {
            RSpec::Value(v) => vec![v],
            RSpec::Range { start, end, step } => {
                let count = ((end - start) / step + 1e-9).floor() as usize;
                (0..=count)
                    .map(|k| (start + k as f64 * step).min(end))
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_has_1001_points() {
        let v = RSpec::default().values();
        assert_eq!(v.len(), 1001);
        assert_eq!(v[0], 0.0);
        assert_eq!(*v.last().unwrap(), 1.0);
        assert!((v[333] - 0.333).abs() < 1e-15);
    }

    #[test]
    fn parses_value_and_range() {
        assert_eq!("0.5".parse::<RSpec>().unwrap(), RSpec::Value(0.5));
        let g: RSpec = "0:1:0.25".parse().unwrap();
        assert_eq!(g.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let g: RSpec = "0:1:0.3".parse().unwrap();
        assert_eq!(g.values().len(), 4);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!("1:0:0.1".parse::<RSpec>().is_err());
        assert!("0:1:0".parse::<RSpec>().is_err());
        assert!("0:1:-0.1".parse::<RSpec>().is_err());
        assert!("0:1".parse::<RSpec>().is_err());
        assert!("abc".parse::<RSpec>().is_err());
        assert!("nan".parse::<RSpec>().is_err());
    }
}
