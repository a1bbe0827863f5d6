use serde::Serialize;

/// Outcome of checking one law: whether it holds and, if not, the
/// lexicographically first violating tuple (rendered as element names).
///
/// For existential conditions (degeneracy, unit existence searches) `holds`
/// means the condition is satisfied and `witness` carries the tuple found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LawCheck {
    pub fn pass(law: impl Into<String>) -> Self {
        LawCheck { law: law.into(), holds: true, witness: None, note: None }
    }

    pub fn fail(law: impl Into<String>, witness: Vec<String>) -> Self {
        LawCheck { law: law.into(), holds: false, witness: Some(witness), note: None }
    }

    /// Builds a universal-law result from an optional counterexample.
    pub fn from_counterexample(law: impl Into<String>, cx: Option<Vec<String>>) -> Self {
        match cx {
            None => Self::pass(law),
            Some(w) => Self::fail(law, w),
        }
    }

    /// Builds an existential-condition result from an optional witness.
    pub fn from_witness(law: impl Into<String>, w: Option<Vec<String>>) -> Self {
        LawCheck { law: law.into(), holds: w.is_some(), witness: w, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// A list of law checks about one subject.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: LawCheck) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: LawReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, law: &str) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.law == law)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

impl std::fmt::Display for LawCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:<16} {}", self.law, if self.holds { "pass" } else { "FAIL" })?;
        if let Some(w) = &self.witness {
            write!(f, "  witness ({})", w.join(", "))?;
        }
        if let Some(n) = &self.note {
            write!(f, "  [{n}]")?;
        }
        Ok(())
    }
}

impl std::fmt::Display for LawReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
