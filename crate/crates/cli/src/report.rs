//! Report records and sinks. One record per verified subject, serialized
//! as JSON lines with a fixed key order, plus an optional CSV summary.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Clone, Debug)]
pub struct Predicates {
    pub cubic: bool,
    pub planar: bool,
    pub three_connected: bool,
    pub cyclically_4ec: bool,
    pub girth: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "skip")]
    Skip,
    Failure,
    #[serde(rename = "budget")]
    Budget,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Skip => "skip",
            Verdict::Failure => "FAILURE",
            Verdict::Budget => "budget",
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct CheckResult {
    pub check: String,
    pub verdict: Verdict,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_digest: Option<String>,
}

impl CheckResult {
    pub fn new(check: &str, verdict: Verdict, detail: impl Into<String>) -> CheckResult {
        CheckResult {
            check: check.into(),
            verdict,
            detail: detail.into(),
            witness_digest: None,
        }
    }

    pub fn with_digest(mut self, digest: String) -> CheckResult {
        self.witness_digest = Some(digest);
        self
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct Record {
    pub schema: u32,
    pub command: String,
    pub file: String,
    pub ordinal: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicates: Option<Predicates>,
    pub status: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    pub budget_exceeded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Record {
    pub fn new(command: &str, file: &str, ordinal: usize) -> Record {
        Record {
            schema: SCHEMA_VERSION,
            command: command.into(),
            file: file.into(),
            ordinal,
            name: None,
            n: None,
            m: None,
            predicates: None,
            status: Verdict::Pass,
            skip_reason: None,
            checks: Vec::new(),
            data: None,
            budget_exceeded: false,
            timing_ms: None,
        }
    }

    /// Folds check verdicts into the record status: any failure dominates,
    /// then any budget cutoff; a record with only skips is a skip.
    pub fn settle_status(&mut self) {
        if self.skip_reason.is_some() {
            self.status = Verdict::Skip;
            return;
        }
        let mut status = Verdict::Skip;
        for c in &self.checks {
            match c.verdict {
                Verdict::Failure => {
                    self.status = Verdict::Failure;
                    return;
                }
                Verdict::Budget => status = Verdict::Budget,
                Verdict::Pass => {
                    if status == Verdict::Skip {
                        status = Verdict::Pass;
                    }
                }
                Verdict::Skip => {}
            }
        }
        if status == Verdict::Budget {
            self.budget_exceeded = true;
        }
        self.status = status;
    }

    pub fn summary_line(&self) -> String {
        let name = self
            .name
            .as_deref()
            .map(|s| format!(" {s}"))
            .unwrap_or_default();
        let mut line = format!(
            "[{}] {}#{}{}",
            self.status.label(),
            self.file,
            self.ordinal,
            name
        );
        if let Some(reason) = &self.skip_reason {
            line.push_str(&format!(" ({reason})"));
            return line;
        }
        for c in &self.checks {
            line.push_str(&format!(" {}={}", c.check, c.verdict.label()));
        }
        line
    }
}

/// 64-bit FNV-1a over witness descriptions: stable across runs and
/// platforms, compact enough to diff reports by eye.
pub fn digest<I: IntoIterator<Item = String>>(parts: I) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for part in parts {
        for b in part.as_bytes() {
            hash ^= u64::from(*b);
            hash = hash.wrapping_mul(0x100000001b3);
        }
        hash ^= 0xff;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

/// Output fan-out: human lines to stdout, JSON lines and CSV rows to files
/// when requested.
pub struct Sink {
    json: Option<BufWriter<File>>,
    csv: Option<BufWriter<File>>,
    pub timings: bool,
}

impl Sink {
    pub fn new(
        json_path: Option<&Path>,
        csv_path: Option<&Path>,
        timings: bool,
    ) -> io::Result<Sink> {
        let json = json_path.map(File::create).transpose()?.map(BufWriter::new);
        let mut csv = csv_path.map(File::create).transpose()?.map(BufWriter::new);
        if let Some(w) = csv.as_mut() {
            writeln!(w, "command,file,ordinal,name,status,checks,failures,budget_exceeded")?;
        }
        Ok(Sink { json, csv, timings })
    }

    pub fn write(&mut self, record: &mut Record) -> io::Result<()> {
        if !self.timings {
            record.timing_ms = None;
        }
        println!("{}", record.summary_line());
        if let Some(w) = self.json.as_mut() {
            serde_json::to_writer(&mut *w, record)?;
            writeln!(w)?;
        }
        if let Some(w) = self.csv.as_mut() {
            let failures = record
                .checks
                .iter()
                .filter(|c| c.verdict == Verdict::Failure)
                .count();
            writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                record.command,
                csv_field(&record.file),
                record.ordinal,
                csv_field(record.name.as_deref().unwrap_or("")),
                record.status.label(),
                record.checks.len(),
                failures,
                record.budget_exceeded
            )?;
        }
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<()> {
        if let Some(w) = self.json.as_mut() {
            w.flush()?;
        }
        if let Some(w) = self.csv.as_mut() {
            w.flush()?;
        }
        Ok(())
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Process exit code from the final record statuses: failures dominate
/// budget cutoffs, which dominate a clean run.
pub fn exit_code(records: &[Record]) -> i32 {
    if records.iter().any(|r| r.status == Verdict::Failure) {
        1
    } else if records
        .iter()
        .any(|r| r.status == Verdict::Budget || r.budget_exceeded)
    {
        3
    } else {
        0
    }
}
