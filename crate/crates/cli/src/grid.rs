use std::str::FromStr;

/// `start:stop:step` with both endpoints strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl RadiusGrid {
    /// Grid values, rounded to 12 decimals so that `0.05:0.95:0.05` yields
    /// `0.15` rather than `0.15000000000000002`.
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|k| ((self.start + k as f64 * self.step) * 1e12).round() / 1e12)
            .collect()
    }
}

impl FromStr for RadiusGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(format!("grid '{s}' is not of the form start:stop:step"));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad number '{t}' in grid: {e}"))
        };
        let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
        for v in [start, stop] {
            if !(v > 0.0 && v < 1.0) {
                return Err(format!("grid endpoint {v} is not strictly inside (0, 1)"));
            }
        }
        if !(step > 0.0) {
            return Err(format!("grid step {step} must be positive"));
        }
        if start > stop {
            return Err(format!("grid start {start} exceeds stop {stop}"));
        }
        Ok(Self { start, stop, step })
    }
}

/// Comma-separated list, e.g. `1,2,3`.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|e| format!("bad list entry '{t}': {e}")))
        .collect()
}
