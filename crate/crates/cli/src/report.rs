//! Machine-readable run reports and CSV emission.

use serde::Serialize;
use std::fmt::Write as _;
use std::path::Path;

/// One named result, optionally compared against a reference value.
#[derive(Clone, Debug, Serialize)]
pub struct ResultRecord {
    pub name: String,
    pub computed: f64,
    pub paper: Option<f64>,
    pub diff: Option<f64>,
    pub pass: bool,
}

impl ResultRecord {
    /// Comparison with absolute tolerance.
    pub fn abs(name: &str, computed: f64, paper: f64, tol: f64) -> Self {
        let diff = (computed - paper).abs();
        ResultRecord {
            name: name.to_string(),
            computed,
            paper: Some(paper),
            diff: Some(diff),
            pass: diff <= tol,
        }
    }

    /// Comparison with relative tolerance.
    pub fn rel(name: &str, computed: f64, paper: f64, tol: f64) -> Self {
        let diff = (computed - paper).abs();
        ResultRecord {
            name: name.to_string(),
            computed,
            paper: Some(paper),
            diff: Some(diff),
            pass: diff <= tol * paper.abs().max(f64::MIN_POSITIVE),
        }
    }

    /// A value reported without a reference.
    pub fn plain(name: &str, computed: f64) -> Self {
        ResultRecord {
            name: name.to_string(),
            computed,
            paper: None,
            diff: None,
            pass: true,
        }
    }

    /// A boolean check reported as 1/0.
    pub fn check(name: &str, pass: bool) -> Self {
        ResultRecord {
            name: name.to_string(),
            computed: if pass { 1.0 } else { 0.0 },
            paper: Some(1.0),
            diff: Some(if pass { 0.0 } else { 1.0 }),
            pass,
        }
    }
}

/// Full report for one CLI invocation.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub results: Vec<ResultRecord>,
    pub wall_ms: u128,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            results: Vec::new(),
            wall_ms: 0,
        }
    }

    pub fn push(&mut self, record: ResultRecord) {
        self.results.push(record);
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn print_human(&self) {
        for r in &self.results {
            let mut line = format!("  {:<28} {:>16.10}", r.name, r.computed);
            if let Some(p) = r.paper {
                let _ = write!(
                    line,
                    "  ref {p:>14.10}  diff {:>9.3e}",
                    r.diff.unwrap_or(0.0)
                );
            }
            let _ = write!(line, "  {}", if r.pass { "ok" } else { "FAIL" });
            println!("{line}");
        }
        println!(
            "{}: {} ({} results, {} ms)",
            self.command,
            if self.all_pass() { "pass" } else { "FAIL" },
            self.results.len(),
            self.wall_ms
        );
    }

    pub fn write_json(&self, path: &Path) -> anyhow::Result<()> {
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(path, json)?;
        Ok(())
    }
}

/// Formats a float with 10 significant digits for CSV stability.
pub fn fmt_sig10(x: f64) -> String {
    format!("{x:.9e}")
}

/// Writes a comma-separated file with a header row.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<()> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}
