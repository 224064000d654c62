//! Score-file ingestion and run deduplication.

use std::collections::{BTreeMap, HashSet};
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

pub const CSV_HEADER: [&str; 6] = ["dataset", "model", "metric", "value", "setting", "repeat"];
const REQUIRED: [&str; 4] = ["dataset", "model", "metric", "value"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub dataset: String,
    pub model: String,
    pub metric: String,
    pub value: f64,
    pub setting: Option<String>,
    pub repeat: Option<i64>,
}

impl RunRecord {
    fn key(&self) -> (&str, &str, &str, Option<&str>, Option<i64>) {
        (
            &self.dataset,
            &self.model,
            &self.metric,
            self.setting.as_deref(),
            self.repeat,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Jsonl,
}

impl InputFormat {
    /// `.jsonl` and `.ndjson` are JSON lines; anything else is CSV.
    pub fn from_path(path: &Path) -> InputFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl" | "ndjson") => InputFormat::Jsonl,
            _ => InputFormat::Csv,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Ingested {
    pub records: Vec<RunRecord>,
    pub warnings: Vec<String>,
}

pub fn ingest(path: &Path, format: InputFormat, strict: bool) -> Result<Ingested> {
    let file = std::fs::File::open(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    ingest_reader(file, format, strict)
}

pub fn ingest_reader<R: Read>(reader: R, format: InputFormat, strict: bool) -> Result<Ingested> {
    let mut out = match format {
        InputFormat::Csv => read_csv(reader, strict)?,
        InputFormat::Jsonl => read_jsonl(reader, strict)?,
    };
    check_unique(&mut out, strict)?;
    Ok(out)
}

fn parse_error(line: u64, reason: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        reason: reason.into(),
    }
}

fn parse_value(raw: &str, line: u64) -> Result<f64> {
    let v: f64 = raw
        .trim()
        .parse()
        .map_err(|_| parse_error(line, format!("`{raw}` is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::NonFiniteValue { line })
    }
}

fn parse_repeat(raw: &str, line: u64) -> Result<Option<i64>> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Ok(None);
    }
    raw.parse()
        .map(Some)
        .map_err(|_| parse_error(line, format!("repeat `{raw}` is not an integer")))
}

fn non_empty(field: &str, raw: &str, line: u64) -> Result<String> {
    if raw.is_empty() {
        Err(parse_error(line, format!("empty `{field}`")))
    } else {
        Ok(raw.to_string())
    }
}

fn read_csv<R: Read>(reader: R, strict: bool) -> Result<Ingested> {
    let mut rdr = csv::ReaderBuilder::new().flexible(false).from_reader(reader);
    let mut warnings = Vec::new();
    let headers = rdr
        .headers()
        .map_err(|e| parse_error(1, e.to_string()))?
        .clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    for name in REQUIRED {
        if col(name).is_none() {
            return Err(parse_error(1, format!("missing column `{name}`")));
        }
    }
    for h in headers.iter().filter(|h| !CSV_HEADER.contains(h)) {
        if strict {
            return Err(parse_error(1, format!("unknown column `{h}`")));
        }
        warnings.push(format!("line 1: ignoring unknown column `{h}`"));
    }
    let idx: Vec<Option<usize>> = CSV_HEADER.iter().map(|c| col(c)).collect();
    let mut records = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(line, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |i: usize| idx[i].and_then(|c| row.get(c)).unwrap_or("");
        records.push(RunRecord {
            dataset: non_empty("dataset", field(0), line)?,
            model: non_empty("model", field(1), line)?,
            metric: non_empty("metric", field(2), line)?,
            value: parse_value(field(3), line)?,
            setting: Some(field(4)).filter(|s| !s.is_empty()).map(str::to_string),
            repeat: parse_repeat(field(5), line)?,
        });
    }
    Ok(Ingested { records, warnings })
}

fn json_string(obj: &serde_json::Map<String, Value>, key: &str, line: u64) -> Result<Option<String>> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(other) => Err(parse_error(line, format!("`{key}` must be a string, got {other}"))),
    }
}

fn read_jsonl<R: Read>(reader: R, strict: bool) -> Result<Ingested> {
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    for (i, text) in BufReader::new(reader).lines().enumerate() {
        let line = i as u64 + 1;
        let text = text.map_err(|e| parse_error(line, e.to_string()))?;
        if text.trim().is_empty() {
            continue;
        }
        let obj = match serde_json::from_str::<Value>(&text) {
            Ok(Value::Object(obj)) => obj,
            Ok(_) => return Err(parse_error(line, "expected a JSON object")),
            Err(e) => return Err(parse_error(line, e.to_string())),
        };
        for key in obj.keys().filter(|k| !CSV_HEADER.contains(&k.as_str())) {
            if strict {
                return Err(parse_error(line, format!("unknown key `{key}`")));
            }
            warnings.push(format!("line {line}: ignoring unknown key `{key}`"));
        }
        let required = |key: &str| -> Result<String> {
            let s = json_string(&obj, key, line)?.ok_or_else(|| parse_error(line, format!("missing `{key}`")))?;
            non_empty(key, &s, line)
        };
        let value = match obj.get("value") {
            Some(Value::Number(n)) => {
                let v = n.as_f64().ok_or_else(|| parse_error(line, "value out of range"))?;
                if !v.is_finite() {
                    return Err(CliError::NonFiniteValue { line });
                }
                v
            }
            // non-finite values cannot be JSON numbers, so accept them as text
            Some(Value::String(s)) => parse_value(s, line)?,
            Some(other) => return Err(parse_error(line, format!("`value` must be a number, got {other}"))),
            None => return Err(parse_error(line, "missing `value`")),
        };
        let repeat = match obj.get("repeat") {
            None | Some(Value::Null) => None,
            Some(Value::Number(n)) => Some(
                n.as_i64()
                    .ok_or_else(|| parse_error(line, format!("repeat `{n}` is not an integer")))?,
            ),
            Some(Value::String(s)) => parse_repeat(s, line)?,
            Some(other) => return Err(parse_error(line, format!("`repeat` must be an integer, got {other}"))),
        };
        records.push(RunRecord {
            dataset: required("dataset")?,
            model: required("model")?,
            metric: required("metric")?,
            value,
            setting: json_string(&obj, "setting", line)?.filter(|s| !s.is_empty()),
            repeat,
        });
    }
    Ok(Ingested { records, warnings })
}

fn check_unique(ingested: &mut Ingested, strict: bool) -> Result<()> {
    let mut seen = HashSet::new();
    for (i, r) in ingested.records.iter().enumerate() {
        if !seen.insert(r.key()) {
            let msg = format!(
                "record {} repeats ({}, {}, {}, {:?}, {:?})",
                i + 1,
                r.dataset,
                r.model,
                r.metric,
                r.setting,
                r.repeat
            );
            if strict {
                return Err(parse_error(i as u64 + 2, msg));
            }
            ingested.warnings.push(msg);
        }
    }
    Ok(())
}

/// One record per (dataset, model, metric): keep the modal setting (ties go
/// to the lexicographically smallest key, no setting first) and average its
/// values. Output is sorted by key.
pub fn deduplicate(records: &[RunRecord]) -> Vec<RunRecord> {
    let mut groups: BTreeMap<(&str, &str, &str), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        groups
            .entry((&r.dataset, &r.model, &r.metric))
            .or_default()
            .push(r);
    }
    groups
        .into_values()
        .map(|group| {
            if let [only] = group[..] {
                return only.clone();
            }
            let mut counts: BTreeMap<Option<&str>, usize> = BTreeMap::new();
            for r in &group {
                *counts.entry(r.setting.as_deref()).or_default() += 1;
            }
            let max = *counts.values().max().expect("group is non-empty");
            let modal = counts
                .into_iter()
                .find(|&(_, c)| c == max)
                .map(|(s, _)| s)
                .expect("some setting attains the maximum");
            let kept: Vec<f64> = group
                .iter()
                .filter(|r| r.setting.as_deref() == modal)
                .map(|r| r.value)
                .collect();
            let first = group[0];
            RunRecord {
                dataset: first.dataset.clone(),
                model: first.model.clone(),
                metric: first.metric.clone(),
                value: kept.iter().sum::<f64>() / kept.len() as f64,
                setting: modal.map(str::to_string),
                repeat: None,
            }
        })
        .collect()
}
