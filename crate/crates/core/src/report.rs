//! JSON-lines check reports.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Reported for information; never fails a run.
    Info,
}

impl Verdict {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// One line of a report: a named check, its verdict, and replay data.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Value>,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl CheckOutcome {
    pub fn new(check: impl Into<String>, pass: bool) -> Self {
        Self {
            check: check.into(),
            verdict: Verdict::from_pass(pass),
            witnesses: Vec::new(),
            residual: 0.0,
            samples: None,
            depth: None,
            value: None,
            model: None,
            seed: None,
        }
    }

    /// A data line carrying a computed value rather than a verdict.
    pub fn info(check: impl Into<String>, value: Value) -> Self {
        let mut line = Self::new(check, true).with_value(value);
        line.verdict = Verdict::Info;
        line
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn with_witness(mut self, w: Value) -> Self {
        self.witnesses.push(w);
        self
    }

    pub fn with_residual(mut self, r: f64) -> Self {
        self.residual = r;
        self
    }

    pub fn with_samples(mut self, n: usize) -> Self {
        self.samples = Some(n);
        self
    }

    pub fn with_depth(mut self, d: u32) -> Self {
        self.depth = Some(d);
        self
    }

    pub fn with_value(mut self, v: Value) -> Self {
        self.value = Some(v);
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report lines serialize")
    }
}

/// An ordered collection of report lines.
#[derive(Clone, Debug, Default)]
pub struct Report {
    lines: Vec<CheckOutcome>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, line: CheckOutcome) {
        self.lines.push(line);
    }

    pub fn extend<I: IntoIterator<Item = CheckOutcome>>(&mut self, lines: I) {
        self.lines.extend(lines);
    }

    pub fn lines(&self) -> &[CheckOutcome] {
        &self.lines
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(CheckOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.lines.iter().filter(|l| !l.passed())
    }

    /// Stamp every line with the replay context.
    pub fn stamp(&mut self, model: &str, seed: u64) {
        for l in &mut self.lines {
            l.model = Some(model.to_string());
            l.seed = Some(seed);
        }
    }

    /// Sort by check name, then witnesses, for stable diffs.
    pub fn sorted(mut self) -> Self {
        self.lines.sort_by_cached_key(|l| {
            (l.check.clone(), serde_json::to_string(&l.witnesses).unwrap_or_default())
        });
        self
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(&l.to_json_line());
            out.push('\n');
        }
        out
    }
}

impl FromIterator<CheckOutcome> for Report {
    fn from_iter<I: IntoIterator<Item = CheckOutcome>>(iter: I) -> Self {
        Self { lines: iter.into_iter().collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn line_shape() {
        let line = CheckOutcome::new("G3:gyroassociativity", false)
            .with_witness(json!([1, 2, 3]))
            .with_residual(1.0)
            .with_depth(4);
        let v: Value = serde_json::from_str(&line.to_json_line()).unwrap();
        assert_eq!(v["check"], "G3:gyroassociativity");
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["witnesses"][0], json!([1, 2, 3]));
        assert_eq!(v["residual"], 1.0);
        assert_eq!(v["depth"], 4);
        assert!(v.get("samples").is_none());
    }

    #[test]
    fn sorting_is_by_name() {
        let r: Report = ["b", "a", "c"].iter().map(|n| CheckOutcome::new(*n, true)).collect();
        let names: Vec<_> = r.sorted().lines().iter().map(|l| l.check.clone()).collect();
        assert_eq!(names, ["a", "b", "c"]);
    }
}
