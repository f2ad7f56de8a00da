use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::label::Indec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One offending pair of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub t: Indec,
    pub u: Indec,
    pub expected: i64,
    pub actual: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Stats {
    pub pairs_checked: u64,
    pub elapsed_ms: u64,
}

/// Structured result of a sweep over label pairs. `status` is `pass`
/// exactly when there are no violations; violations are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub status: Status,
    pub violations: Vec<Violation>,
    pub stats: Stats,
}

impl Report {
    pub fn new(
        name: impl Into<String>,
        mut violations: Vec<Violation>,
        pairs_checked: u64,
        started: Instant,
    ) -> Self {
        violations.sort();
        let status = if violations.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            name: name.into(),
            status,
            violations,
            stats: Stats {
                pairs_checked,
                elapsed_ms: started.elapsed().as_millis() as u64,
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(
            f,
            "{status} {} ({} pairs, {} violations, {} ms)",
            self.name,
            self.stats.pairs_checked,
            self.violations.len(),
            self.stats.elapsed_ms
        )?;
        for v in self.violations.iter().take(10) {
            write!(
                f,
                "\n  t={} u={} expected={} actual={}",
                v.t, v.u, v.expected, v.actual
            )?;
        }
        if self.violations.len() > 10 {
            write!(f, "\n  ... {} more", self.violations.len() - 10)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_schema() {
        let v = Violation {
            t: Indec::new(-1, 1),
            u: Indec::new(-1, 0),
            expected: 0,
            actual: 1,
        };
        let mut r = Report::new("demo", vec![v], 3, Instant::now());
        r.stats.elapsed_ms = 7;
        let value: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(
            value,
            serde_json::json!({
                "name": "demo",
                "status": "fail",
                "violations": [{"t": [-1, 1], "u": [-1, 0], "expected": 0, "actual": 1}],
                "stats": {"pairs_checked": 3, "elapsed_ms": 7}
            })
        );
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn status_follows_violations() {
        assert!(Report::new("ok", vec![], 0, Instant::now()).passed());
    }
}
