//! Check reports and their text/JSON renderings.
//!
//! The JSON form is rendered by hand so runs are byte-identical: keys in a
//! fixed order, every number printed with 17 significant digits, and no
//! timing information. The text form shows the same values plus timing.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// One check: an identity, a measure comparison, or an audited axiom.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub id: String,
    /// Equation tag of the identity the check exercises, e.g. `Eq.(14)`.
    pub equation: String,
    pub detail: String,
    /// Named values backing the verdict, in a fixed order.
    pub values: Vec<(String, f64)>,
    pub defect: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn judged(id: &str, equation: &str, detail: &str, defect: f64, tolerance: f64) -> Self {
        Self {
            id: id.into(),
            equation: equation.into(),
            detail: detail.into(),
            values: Vec::new(),
            defect,
            tolerance,
            verdict: if defect <= tolerance {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            note: None,
        }
    }

    pub fn with_values(mut self, values: Vec<(String, f64)>) -> Self {
        self.values = values;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub scenario: String,
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub duration_ms: u128,
}

impl Report {
    pub fn overall(&self) -> Verdict {
        if self.checks.iter().all(|c| c.verdict == Verdict::Pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    /// Stable-key JSON with 17-significant-digit numbers; byte-identical
    /// across runs of the same scenario and suite.
    pub fn render_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!(
            "  \"scenario\": {},\n",
            json_string(&self.scenario)
        ));
        out.push_str(&format!("  \"suite\": {},\n", json_string(&self.suite)));
        out.push_str(&format!(
            "  \"overall\": {},\n",
            json_string(&self.overall().to_string())
        ));
        out.push_str("  \"checks\": [\n");
        for (i, check) in self.checks.iter().enumerate() {
            out.push_str("    {\n");
            out.push_str(&format!("      \"id\": {},\n", json_string(&check.id)));
            out.push_str(&format!(
                "      \"equation\": {},\n",
                json_string(&check.equation)
            ));
            out.push_str(&format!(
                "      \"detail\": {},\n",
                json_string(&check.detail)
            ));
            out.push_str(&format!(
                "      \"defect\": {},\n",
                json_number(check.defect)
            ));
            out.push_str(&format!(
                "      \"tolerance\": {},\n",
                json_number(check.tolerance)
            ));
            out.push_str("      \"values\": {");
            for (k, (name, value)) in check.values.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                out.push_str(&format!("{}: {}", json_string(name), json_number(*value)));
            }
            out.push_str("},\n");
            if let Some(note) = &check.note {
                out.push_str(&format!("      \"note\": {},\n", json_string(note)));
            }
            out.push_str(&format!(
                "      \"verdict\": {}\n",
                json_string(&check.verdict.to_string())
            ));
            out.push_str(if i + 1 < self.checks.len() {
                "    },\n"
            } else {
                "    }\n"
            });
        }
        out.push_str("  ]\n");
        out.push_str("}\n");
        out
    }

    /// Aligned table; numbers carry the same 17-significant-digit rendering
    /// as the JSON form.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario: {}\n", self.scenario));
        out.push_str(&format!("suite:    {}\n", self.suite));
        let id_width = self
            .checks
            .iter()
            .map(|c| c.id.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let eq_width = self
            .checks
            .iter()
            .map(|c| c.equation.len())
            .max()
            .unwrap_or(8)
            .max(8);
        let rule_width = id_width + eq_width + 2 * 25 + 12;
        out.push_str(&"-".repeat(rule_width));
        out.push('\n');
        out.push_str(&format!(
            "{:<id_width$}  {:<eq_width$}  {:<23}  {:<23}  verdict\n",
            "check", "equation", "defect", "tolerance"
        ));
        for check in &self.checks {
            out.push_str(&format!(
                "{:<id_width$}  {:<eq_width$}  {:<23}  {:<23}  {}\n",
                check.id,
                check.equation,
                json_number(check.defect),
                json_number(check.tolerance),
                check.verdict
            ));
            for (name, value) in &check.values {
                out.push_str(&format!("    {name} = {}\n", json_number(*value)));
            }
            if let Some(note) = &check.note {
                out.push_str(&format!("    note: {note}\n"));
            }
        }
        out.push_str(&"-".repeat(rule_width));
        out.push('\n');
        let failures: Vec<&CheckRecord> = self.failures().collect();
        if failures.is_empty() {
            out.push_str(&format!(
                "ALL CHECKS PASSED ({} checks)\n",
                self.checks.len()
            ));
        } else {
            for failure in &failures {
                out.push_str(&format!(
                    "FAIL {} {}: defect={} tolerance={} ({})\n",
                    failure.equation,
                    failure.id,
                    json_number(failure.defect),
                    json_number(failure.tolerance),
                    failure.detail
                ));
            }
            out.push_str(&format!(
                "{} OF {} CHECKS FAILED\n",
                failures.len(),
                self.checks.len()
            ));
        }
        out.push_str(&format!("completed in {} ms\n", self.duration_ms));
        out
    }
}

/// 17 significant digits, valid as a JSON number.
pub fn json_number(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        // JSON has no non-finite numbers; encode as null
        "null".into()
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
