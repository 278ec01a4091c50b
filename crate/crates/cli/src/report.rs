//! Versioned report stream: structured records or a human summary.

use std::fmt::Write;

pub const HEADER: &str = "# ndds-lab report v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
    Unchecked,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Mismatch => "mismatch",
            Status::Unchecked => "unchecked",
            Status::Error => "error",
        }
    }
}

/// One executed query or check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    /// `line=7` for config queries, `check=...` for built-in checks.
    pub id: (String, String),
    pub kind: String,
    pub subject: String,
    pub scope: String,
    pub result: String,
    pub expect: Option<String>,
    pub note: Option<String>,
    pub status: Status,
}

/// Extra lines emitted after the records (sweep counterexamples).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<Record>,
    pub details: Vec<String>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Error) > 0 {
            2
        } else if self.count(Status::Mismatch) > 0 {
            1
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Records => self.render_records(),
            Format::Human => self.render_human(),
        }
    }

    fn summary_counts(&self) -> [(&'static str, usize); 4] {
        [
            ("ok", self.count(Status::Ok)),
            ("mismatch", self.count(Status::Mismatch)),
            ("unchecked", self.count(Status::Unchecked)),
            ("error", self.count(Status::Error)),
        ]
    }

    fn render_records(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{HEADER}").unwrap();
        for r in &self.records {
            write!(
                out,
                "record {}={} kind={} subject={} scope={} result={}",
                r.id.0,
                quote(&r.id.1),
                r.kind,
                quote(&r.subject),
                quote(&r.scope),
                quote(&r.result)
            )
            .unwrap();
            if let Some(e) = &r.expect {
                write!(out, " expect={}", quote(e)).unwrap();
            }
            if let Some(n) = &r.note {
                write!(out, " note={}", quote(n)).unwrap();
            }
            writeln!(out, " status={}", r.status.as_str()).unwrap();
        }
        for d in &self.details {
            writeln!(out, "{d}").unwrap();
        }
        write!(out, "summary records={}", self.records.len()).unwrap();
        for (k, v) in self.summary_counts() {
            write!(out, " {k}={v}").unwrap();
        }
        out.push('\n');
        out
    }

    fn render_human(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{HEADER}").unwrap();
        for r in &self.records {
            writeln!(
                out,
                "[{}] {} {}: {} {}",
                r.status.as_str(),
                r.id.0,
                r.id.1,
                r.kind,
                r.subject
            )
            .unwrap();
            if !r.scope.is_empty() {
                writeln!(out, "    scope   {}", r.scope).unwrap();
            }
            writeln!(out, "    result  {}", r.result).unwrap();
            if let Some(e) = &r.expect {
                writeln!(out, "    expect  {e}").unwrap();
            }
            if let Some(n) = &r.note {
                writeln!(out, "    note    {n}").unwrap();
            }
        }
        for d in &self.details {
            writeln!(out, "{d}").unwrap();
        }
        let counts: Vec<String> = self.summary_counts().iter().map(|(k, v)| format!("{v} {k}")).collect();
        writeln!(out, "{} records: {}", self.records.len(), counts.join(", ")).unwrap();
        out
    }
}

/// Bare if it has no spaces, quotes or backslashes; double-quoted otherwise.
pub fn quote(s: &str) -> String {
    if !s.is_empty() && !s.contains([' ', '"', '\\', '\t']) {
        return s.to_string();
    }
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting() {
        assert_eq!(quote("PROVEN@res=1"), "PROVEN@res=1");
        assert_eq!(quote("a b"), "\"a b\"");
        assert_eq!(quote("say \"x\""), "\"say \\\"x\\\"\"");
        assert_eq!(quote(""), "\"\"");
    }

    #[test]
    fn exit_codes() {
        let rec = |status| Record {
            id: ("line".into(), "1".into()),
            kind: "multi".into(),
            subject: "s".into(),
            scope: String::new(),
            result: "x".into(),
            expect: None,
            note: None,
            status,
        };
        let mut r = Report::default();
        assert_eq!(r.exit_code(), 0);
        r.records.push(rec(Status::Unchecked));
        assert_eq!(r.exit_code(), 0);
        r.records.push(rec(Status::Mismatch));
        assert_eq!(r.exit_code(), 1);
        r.records.push(rec(Status::Error));
        assert_eq!(r.exit_code(), 2);
    }
}
