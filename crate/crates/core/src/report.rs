//! Machine-readable verification reports.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Divergent,
    Error,
}

/// The outcome of one claim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub mode: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Sample point that exposed a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl CheckResult {
    pub fn new(id: impl Into<String>, mode: impl Into<String>, status: Status) -> Self {
        Self { id: id.into(), mode: mode.into(), status, detail: None, witness: None, wall_ms: None }
    }

    pub fn pass(id: impl Into<String>, mode: impl Into<String>) -> Self {
        Self::new(id, mode, Status::Pass)
    }

    pub fn fail(id: impl Into<String>, mode: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(id, mode, Status::Fail).with_detail(detail)
    }

    pub fn error(id: impl Into<String>, mode: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(id, mode, Status::Error).with_detail(detail)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_witness(mut self, witness: Vec<String>) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// Runs `f` and records its wall time in milliseconds.
    pub fn timed(f: impl FnOnce() -> CheckResult) -> CheckResult {
        let start = std::time::Instant::now();
        let mut r = f();
        r.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        r
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = CheckResult>) {
        self.checks.extend(cs);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(CheckResult::is_pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.is_pass())
    }

    /// Pretty JSON; wall times are dropped unless `timing` is set so that
    /// equal inputs give byte-identical output.
    pub fn to_json(&self, timing: bool) -> String {
        let mut r = self.clone();
        if !timing {
            for c in &mut r.checks {
                c.wall_ms = None;
            }
        }
        serde_json::to_string_pretty(&r).expect("report serializes")
    }

    /// One line per check: `PASS id` or `FAIL id: detail`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Divergent => "DIVERGENT",
                Status::Error => "ERROR",
            };
            out.push_str(&format!("{tag} [{}] {}", c.mode, c.id));
            if let Some(d) = &c.detail {
                out.push_str(&format!(": {d}"));
            }
            out.push('\n');
        }
        out
    }
}
