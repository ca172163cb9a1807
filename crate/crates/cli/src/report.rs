//! Structured check reports with a human text form and a line-delimited
//! machine form that round-trips losslessly.

use std::fmt::Write as _;

/// One report section: a kind tag plus ordered key/value fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: impl Into<String>) -> Self {
        Record {
            kind: kind.into(),
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// Exit codes: 0 all-pass, 1 bound violation or counterexample, 2 invalid
/// input, 3 undecidable dispatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<Record>,
    pub exit_code: i32,
}

impl Report {
    pub fn new() -> Self {
        Report {
            records: Vec::new(),
            exit_code: 0,
        }
    }

    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = writeln!(out, "[{}]", r.kind);
            for (k, v) in &r.fields {
                if v.contains('\n') {
                    let _ = writeln!(out, "  {k}:");
                    for line in v.lines() {
                        let _ = writeln!(out, "    {line}");
                    }
                } else {
                    let _ = writeln!(out, "  {k}: {v}");
                }
            }
        }
        let _ = writeln!(out, "exit: {}", self.exit_code);
        out
    }

    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&escape(&r.kind));
            for (k, v) in &r.fields {
                out.push('|');
                out.push_str(&escape(k));
                out.push('=');
                out.push_str(&escape(v));
            }
            out.push('\n');
        }
        let _ = writeln!(out, "exit|code={}", self.exit_code);
        out
    }
}

impl Default for Report {
    fn default() -> Self {
        Report::new()
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '|' => out.push_str("\\p"),
            '=' => out.push_str("\\e"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out
}

fn unescape(s: &str) -> Result<String, String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('p') => out.push('|'),
            Some('e') => out.push('='),
            Some('n') => out.push('\n'),
            other => return Err(format!("bad escape `\\{}`", other.unwrap_or(' '))),
        }
    }
    Ok(out)
}

/// Parse the machine rendering back into a report.
pub fn parse_machine_report(text: &str) -> Result<Report, String> {
    let mut report = Report::new();
    let mut saw_exit = false;
    for line in text.lines() {
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split('|');
        let kind = unescape(parts.next().unwrap_or(""))?;
        if kind == "exit" {
            let code = parts
                .next()
                .and_then(|f| f.strip_prefix("code="))
                .ok_or("exit line without code")?;
            report.exit_code = code.parse().map_err(|_| "exit code is not an integer")?;
            saw_exit = true;
            continue;
        }
        let mut record = Record::new(kind);
        for field in parts {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| format!("field `{field}` has no `=`"))?;
            record = record.field(unescape(k)?, unescape(v)?);
        }
        report.push(record);
    }
    if !saw_exit {
        return Err("machine report has no exit line".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_round_trip() {
        let mut r = Report::new();
        r.push(
            Record::new("check")
                .field("theorem", "Theorem 2.1")
                .field("statement", "g(L) >= 2q - 2")
                .field("note", "pipes | equals = and\nnewlines"),
        );
        r.exit_code = 1;
        let machine = r.render_machine();
        let back = parse_machine_report(&machine).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.render_machine(), machine);
    }
}
