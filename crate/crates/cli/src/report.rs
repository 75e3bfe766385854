use std::fmt::Write as _;

/// What a check requires of its measured value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
    Within { lo: f64, hi: f64 },
}

impl Bound {
    pub fn holds(self, x: f64) -> bool {
        match self {
            Bound::AtMost(t) => x <= t,
            Bound::AtLeast(t) => x >= t,
            Bound::Within { lo, hi } => (lo..=hi).contains(&x),
        }
    }

    fn describe(self) -> String {
        match self {
            Bound::AtMost(t) => format!("tolerance <= {t:e}"),
            Bound::AtLeast(t) => format!("required >= {t:e}"),
            Bound::Within { lo, hi } => format!("required in [{lo}, {hi}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub bound: Bound,
}

impl Check {
    /// NaN never passes.
    pub fn passed(&self) -> bool {
        self.bound.holds(self.measured)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    header: Vec<(String, String)>,
    values: Vec<(String, f64)>,
    notes: Vec<String>,
    checks: Vec<Check>,
}

impl Report {
    pub fn header(&mut self, key: &str, value: impl Into<String>) {
        self.header.push((key.to_string(), value.into()));
    }

    pub fn value(&mut self, key: &str, v: f64) {
        self.values.push((key.to_string(), v));
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn check(&mut self, name: &str, measured: f64, bound: Bound) {
        self.checks.push(Check {
            name: name.to_string(),
            measured,
            bound,
        });
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.values.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    pub fn find_check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut s = String::from("photonwave report\n\n");
        let w = self.header.iter().map(|(k, _)| k.len()).max().unwrap_or(0) + 2;
        for (k, v) in &self.header {
            let _ = writeln!(s, "{k:<w$}{v}");
        }
        s.push_str("\n[values]\n");
        let w = self.values.iter().map(|(k, _)| k.len()).max().unwrap_or(0) + 2;
        for (k, v) in &self.values {
            let _ = writeln!(s, "{k:<w$}{v:.16e}");
        }
        s.push_str("\n[checks]\n");
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0) + 2;
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                s,
                "{status}  {:<w$}measured = {:.6e}  {}",
                c.name,
                c.measured,
                c.bound.describe()
            );
        }
        if !self.notes.is_empty() {
            s.push_str("\n[notes]\n");
            for n in &self.notes {
                let _ = writeln!(s, "{n}");
            }
        }
        let failed = self.failures();
        s.push('\n');
        if failed.is_empty() {
            let _ = writeln!(s, "result: all {} checks passed", self.checks.len());
        } else {
            let names: Vec<&str> = failed.iter().map(|c| c.name.as_str()).collect();
            let _ = writeln!(
                s,
                "result: {} of {} checks failed: {}",
                failed.len(),
                self.checks.len(),
                names.join(", ")
            );
        }
        s
    }
}
