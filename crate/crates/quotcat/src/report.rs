use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Undecided => "undecided",
        }
    }

    pub fn of(passed: bool) -> Verdict {
        if passed {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// The worse of two verdicts: fail over undecided over pass.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Undecided, _) | (_, Verdict::Undecided) => Verdict::Undecided,
            _ => Verdict::Pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: String,
    pub text: String,
}

impl Witness {
    pub fn new(kind: impl Into<String>, text: impl Into<String>) -> Self {
        Witness {
            kind: kind.into(),
            text: text.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub cases: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub values: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub verdict: Verdict,
    pub summary: String,
    pub checks: Vec<Check>,
    pub witnesses: Vec<Witness>,
    pub dims: BTreeMap<String, DimTable>,
}

impl Stage {
    pub fn new(name: impl Into<String>) -> Self {
        Stage {
            name: name.into(),
            verdict: Verdict::Pass,
            summary: String::new(),
            checks: Vec::new(),
            witnesses: Vec::new(),
            dims: BTreeMap::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, verdict: Verdict, cases: usize, detail: impl Into<String>) {
        self.verdict = self.verdict.and(verdict);
        self.checks.push(Check {
            name: name.into(),
            verdict,
            cases,
            detail: detail.into(),
        });
    }

    pub fn witness(&mut self, kind: impl Into<String>, text: impl Into<String>) {
        self.witnesses.push(Witness::new(kind, text));
    }

    pub fn find_check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSummary {
    pub name: String,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioSummary {
    pub field: u32,
    pub vertices: usize,
    pub arrows: Vec<String>,
    pub relations: Vec<String>,
    pub bound: usize,
    pub algebra_dim: usize,
    pub modules: Vec<ModuleSummary>,
    pub subcat: Option<Vec<String>>,
    pub universe: Vec<ModuleSummary>,
    pub side: String,
    pub tasks: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub scenario: ScenarioSummary,
    pub stages: Vec<Stage>,
    pub overall: String,
    pub provenance: Vec<String>,
}

impl Report {
    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    /// 0 when everything passed, 1 on any failure, 2 when something is
    /// undecided and nothing failed.
    pub fn exit_code(&self) -> i32 {
        let v = self.stages.iter().fold(Verdict::Pass, |acc, s| acc.and(s.verdict));
        match v {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Undecided => 2,
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let sc = &self.scenario;
        let _ = writeln!(out, "# quotcat report\n");
        let _ = writeln!(out, "- field: F_{}", sc.field);
        let _ = writeln!(out, "- quiver: {} vertices; arrows {}", sc.vertices, sc.arrows.join(", "));
        if !sc.relations.is_empty() {
            let _ = writeln!(out, "- relations: {}", sc.relations.join(", "));
        }
        let _ = writeln!(out, "- bound: {}; algebra dimension {}", sc.bound, sc.algebra_dim);
        if let Some(m) = &sc.subcat {
            let _ = writeln!(out, "- subcategory: add({})", m.join(", "));
        }
        let names: Vec<String> = sc.universe.iter().map(|m| m.name.clone()).collect();
        let _ = writeln!(out, "- universe: {}", names.join(", "));
        let _ = writeln!(out, "- side: {}", sc.side);
        let _ = writeln!(out, "\n**Overall:** {}\n", self.overall);
        for st in &self.stages {
            let _ = writeln!(out, "## Stage `{}`: {}\n", st.name, st.verdict.name());
            if !st.summary.is_empty() {
                let _ = writeln!(out, "{}\n", st.summary);
            }
            if !st.checks.is_empty() {
                let _ = writeln!(out, "| check | verdict | cases | detail |\n|---|---|---|---|");
                for c in &st.checks {
                    let _ = writeln!(out, "| {} | {} | {} | {} |", c.name, c.verdict.name(), c.cases, c.detail.replace('|', "/"));
                }
                out.push('\n');
            }
            for (name, t) in &st.dims {
                let _ = writeln!(out, "{name}:\n");
                let _ = writeln!(out, "| | {} |", t.cols.join(" | "));
                let _ = writeln!(out, "|---|{}", "---|".repeat(t.cols.len()));
                for (r, row) in t.rows.iter().zip(&t.values) {
                    let vals: Vec<String> = row.iter().map(usize::to_string).collect();
                    let _ = writeln!(out, "| {} | {} |", r, vals.join(" | "));
                }
                out.push('\n');
            }
            if !st.witnesses.is_empty() {
                for w in &st.witnesses {
                    let _ = writeln!(out, "- {}: {}", w.kind, w.text);
                }
                out.push('\n');
            }
        }
        if !self.provenance.is_empty() {
            let _ = writeln!(out, "## Provenance\n");
            for p in &self.provenance {
                let _ = writeln!(out, "- {p}");
            }
        }
        out
    }
}

/// Stage verdicts and the overall line read back from markdown.
pub fn markdown_verdicts(md: &str) -> (Vec<(String, String)>, Option<String>) {
    let mut stages = Vec::new();
    let mut overall = None;
    for line in md.lines() {
        if let Some(rest) = line.strip_prefix("## Stage `") {
            if let Some((name, verdict)) = rest.split_once("`: ") {
                stages.push((name.to_string(), verdict.to_string()));
            }
        } else if let Some(rest) = line.strip_prefix("**Overall:** ") {
            overall = Some(rest.to_string());
        }
    }
    (stages, overall)
}

/// Stage verdicts and overall read from a JSON report.
pub fn json_verdicts(json: &str) -> serde_json::Result<(Vec<(String, String)>, String)> {
    let r: Report = serde_json::from_str(json)?;
    let stages = r.stages.iter().map(|s| (s.name.clone(), s.verdict.name().to_string())).collect();
    Ok((stages, r.overall))
}
