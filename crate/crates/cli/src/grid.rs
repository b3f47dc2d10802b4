use std::fmt;
use std::str::FromStr;

use iontrap_core::params::Linspace;

/// A `start:end:count` grid specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec(pub Linspace);

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, end, count] = parts[..] else {
            return Err(format!("expected start:end:count, got {s:?}"));
        };
        let start: f64 = start.parse().map_err(|_| format!("bad start {start:?}"))?;
        let end: f64 = end.parse().map_err(|_| format!("bad end {end:?}"))?;
        let count: usize = count.parse().map_err(|_| format!("bad count {count:?}"))?;
        if !(start.is_finite() && end.is_finite()) {
            return Err("grid endpoints must be finite".into());
        }
        Linspace::new(start, end, count)
            .map(GridSpec)
            .map_err(|e| e.to_string())
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.0.start, self.0.end, self.0.count)
    }
}
