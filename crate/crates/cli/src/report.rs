use serde::Serialize;
use serde_json::Value;

/// One named check in a report.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn from_verdict<W: Serialize>(check: &str, verdict: Result<(), W>) -> Self {
        let (pass, witness) = match verdict {
            Ok(()) => (true, None),
            Err(w) => (false, Some(serde_json::to_value(w).expect("witnesses serialize"))),
        };
        Self { check: check.into(), criterion: None, pass, witness }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl Report {
    pub fn new(command: &str, checks: Vec<Check>, details: Option<Value>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self { command: command.into(), pass, checks, details }
    }

    pub fn render(&self, markdown: bool) -> String {
        if markdown {
            self.markdown()
        } else {
            let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
            s.push('\n');
            s
        }
    }

    fn markdown(&self) -> String {
        let mut out = format!("# {}\n\n", self.command);
        out.push_str(&format!("Result: **{}**\n", if self.pass { "pass" } else { "fail" }));
        if !self.checks.is_empty() {
            out.push_str("\n| check | criterion | result | witness |\n|---|---|---|---|\n");
            for c in &self.checks {
                let witness = c.witness.as_ref().map_or(String::new(), |w| format!("`{w}`"));
                out.push_str(&format!(
                    "| {} | {} | {} | {} |\n",
                    c.check,
                    c.criterion.as_deref().unwrap_or(""),
                    if c.pass { "pass" } else { "FAIL" },
                    witness.replace('|', "\\|"),
                ));
            }
        }
        if let Some(d) = &self.details {
            out.push_str("\n## Details\n\n```json\n");
            out.push_str(&serde_json::to_string_pretty(d).expect("details serialize"));
            out.push_str("\n```\n");
        }
        out
    }
}
