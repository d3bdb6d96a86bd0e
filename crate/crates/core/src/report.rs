//! Pass/fail reports produced by the verification suites.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub subject: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<String>,
}

impl Check {
    pub fn ok(name: impl Into<String>, subject: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            subject: subject.into(),
            pass: true,
            counterexample: None,
        }
    }

    pub fn failed(
        name: impl Into<String>,
        subject: impl Into<String>,
        counterexample: impl Into<String>,
    ) -> Self {
        Check {
            name: name.into(),
            subject: subject.into(),
            pass: false,
            counterexample: Some(counterexample.into()),
        }
    }

    /// Passes when `lhs == rhs`; otherwise records both sides.
    pub fn equal<T: PartialEq + fmt::Display>(
        name: impl Into<String>,
        subject: impl Into<String>,
        lhs: &T,
        rhs: &T,
    ) -> Self {
        if lhs == rhs {
            Check::ok(name, subject)
        } else {
            Check::failed(name, subject, format!("{} != {}", clip(lhs), clip(rhs)))
        }
    }
}

const CLIP: usize = 400;

fn clip<T: fmt::Display>(x: &T) -> String {
    let s = x.to_string();
    if s.chars().count() <= CLIP {
        s
    } else {
        let head: String = s.chars().take(CLIP).collect();
        format!("{head}...")
    }
}

/// `{"checks":[...],"pass":bool}`
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport {
            checks: Vec::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    pub fn count(&self) -> usize {
        self.checks.len()
    }

    /// One line per check name, in order of first appearance, with the
    /// first failing case under each failed name.
    pub fn summary(&self) -> String {
        let mut order: Vec<&str> = Vec::new();
        let mut tally: std::collections::HashMap<&str, (usize, usize, Option<&Check>)> =
            std::collections::HashMap::new();
        for c in &self.checks {
            let entry = tally.entry(c.name.as_str()).or_insert_with(|| {
                order.push(c.name.as_str());
                (0, 0, None)
            });
            entry.0 += 1;
            if !c.pass {
                entry.1 += 1;
                entry.2.get_or_insert(c);
            }
        }
        let mut out = String::new();
        for name in order {
            let (n, failed, first) = tally[name];
            if failed == 0 {
                out.push_str(&format!("PASS {name} ({n})\n"));
            } else {
                out.push_str(&format!("FAIL {name} ({failed} of {n} failed)\n"));
                if let Some(c) = first {
                    out.push_str(&format!("    {c}\n"));
                }
            }
        }
        out.push_str(&format!(
            "{} checks, {} failed: {}",
            self.count(),
            self.failures().count(),
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}

impl FromIterator<Check> for VerificationReport {
    fn from_iter<I: IntoIterator<Item = Check>>(iter: I) -> Self {
        let mut r = VerificationReport::new();
        for c in iter {
            r.push(c);
        }
        r
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{tag} {} [{}]", self.name, self.subject)?;
        if let Some(ce) = &self.counterexample {
            write!(f, "\n    {ce}")?;
        }
        Ok(())
    }
}

impl fmt::Display for VerificationReport {
    /// One line per check, failures followed by their counterexample.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} checks, {} failed: {}",
            self.checks.len(),
            failed,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}
