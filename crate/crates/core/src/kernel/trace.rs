use std::fmt;

/// Rewrite rules a derivation may record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Assume,
    Substitute,
    Adequate,
    CrossMultiply,
    Square,
    Cancel,
    Divide,
    Suppress,
    Solve,
    Annotate,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Assume => "assume",
            Rule::Substitute => "substitute",
            Rule::Adequate => "adequate",
            Rule::CrossMultiply => "cross-multiply",
            Rule::Square => "isolate-and-square",
            Rule::Cancel => "cancel",
            Rule::Divide => "divide",
            Rule::Suppress => "suppress",
            Rule::Solve => "solve",
            Rule::Annotate => "annotate",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub before: String,
    pub after: String,
    pub note: String,
}

/// Ordered record of every rule applied in one derivation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DerivationTrace {
    steps: Vec<TraceStep>,
}

impl DerivationTrace {
    pub fn new() -> Self {
        DerivationTrace::default()
    }

    pub fn push(
        &mut self,
        rule: Rule,
        before: impl Into<String>,
        after: impl Into<String>,
        note: impl Into<String>,
    ) {
        self.steps.push(TraceStep {
            rule,
            before: before.into(),
            after: after.into(),
            note: note.into(),
        });
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn contains(&self, rule: Rule) -> bool {
        self.steps.iter().any(|s| s.rule == rule)
    }

    pub fn position(&self, rule: Rule) -> Option<usize> {
        self.steps.iter().position(|s| s.rule == rule)
    }

    /// Every suppression is preceded by a division.
    pub fn is_well_ordered(&self) -> bool {
        let mut divided = false;
        for s in &self.steps {
            match s.rule {
                Rule::Divide => divided = true,
                Rule::Suppress if !divided => return false,
                _ => {}
            }
        }
        true
    }

    pub fn extend(&mut self, other: DerivationTrace) {
        self.steps.extend(other.steps);
    }
}

impl fmt::Display for DerivationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "{:>2}. {}", i + 1, s.rule)?;
            if !s.before.is_empty() {
                writeln!(f, "      before: {}", s.before)?;
            }
            if !s.after.is_empty() {
                writeln!(f, "      after:  {}", s.after)?;
            }
            if !s.note.is_empty() {
                writeln!(f, "      note:   {}", s.note)?;
            }
        }
        Ok(())
    }
}
