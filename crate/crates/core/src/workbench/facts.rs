//! Facts and bounds files: `m,n,code,source,note` rows, `#` comments, an
//! optional header row.

use std::collections::HashMap;
use std::path::Path;

use crate::cgt::{GameStore, GameValue};
use crate::rules::{Cell, Fact, FactTable, OutcomeConstraint, Provenance};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactsError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("line {line}: duplicate cell {}x{} (first on line {first_line})", cell.0, cell.1)]
    Duplicate { line: u64, cell: Cell, first_line: u64 },
    #[error("line {line}: bad outcome code {code:?}")]
    BadCode { line: u64, code: String },
    #[error("line {line}: bad game {text:?}: {message}")]
    BadGame { line: u64, text: String, message: String },
}

/// One data row, before its third column is interpreted.
struct Row {
    line: u64,
    m: usize,
    n: usize,
    value: String,
    source: String,
}

/// Data records with their line numbers, skipping comments, blank lines
/// and a leading header.
fn records(text: &str) -> Result<Vec<(u64, csv::StringRecord)>, FactsError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i as u64 + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(trimmed.as_bytes());
        let mut record = csv::StringRecord::new();
        reader
            .read_record(&mut record)
            .map_err(|e| FactsError::Parse { line, message: e.to_string() })?;
        if out.is_empty() && record.get(0) == Some("m") {
            continue;
        }
        out.push((line, record));
    }
    Ok(out)
}

fn rows(text: &str) -> Result<Vec<Row>, FactsError> {
    let mut out = Vec::new();
    let mut seen: HashMap<Cell, u64> = HashMap::new();
    for (line, record) in records(text)? {
        if record.len() < 3 {
            return Err(FactsError::Parse {
                line,
                message: format!("expected at least 3 fields, found {}", record.len()),
            });
        }
        let size = |k: usize, what: &str| -> Result<usize, FactsError> {
            match record[k].parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(FactsError::Parse {
                    line,
                    message: format!("bad {what} {:?}", &record[k]),
                }),
            }
        };
        let (m, n) = (size(0, "height")?, size(1, "width")?);
        if let Some(&first_line) = seen.get(&(m, n)) {
            return Err(FactsError::Duplicate { line, cell: (m, n), first_line });
        }
        seen.insert((m, n), line);
        let source = record.get(3).filter(|s| !s.is_empty()).unwrap_or("unknown");
        out.push(Row {
            line,
            m,
            n,
            value: record[2].to_string(),
            source: source.to_string(),
        });
    }
    Ok(out)
}

/// Parses a facts file body into imported facts.
pub fn parse_facts(text: &str) -> Result<FactTable, FactsError> {
    let mut table = FactTable::new();
    for row in rows(text)? {
        if !OutcomeConstraint::FILE_CODES.contains(&row.value.as_str()) {
            return Err(FactsError::BadCode { line: row.line, code: row.value });
        }
        let constraint: OutcomeConstraint = row.value.parse().expect("file codes parse");
        let fact = Fact::new(row.m, row.n, constraint, Provenance::Imported(row.source));
        table.insert(fact).expect("cells are unique");
    }
    Ok(table)
}

pub fn load_facts(path: impl AsRef<Path>) -> Result<FactTable, FactsError> {
    parse_facts(&read(path.as_ref())?)
}

fn read(path: &Path) -> Result<String, FactsError> {
    std::fs::read_to_string(path).map_err(|e| FactsError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Writes facts back in file form, one row per known cell.
pub fn write_facts(table: &FactTable) -> String {
    let mut out = String::from("m,n,code,source,note\n");
    for ((m, n), c) in table.iter() {
        let source = match &table.history(m, n).last().map(|f| &f.provenance) {
            Some(Provenance::Imported(tag)) => tag.clone(),
            Some(Provenance::Search) => "search".into(),
            _ => "derived".into(),
        };
        out.push_str(&format!("{m},{n},{},{source},\n", c.code()));
    }
    out
}

/// A proven upper bound `|G(m, n)| <= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundFact {
    pub m: usize,
    pub n: usize,
    pub bound: GameValue,
    pub source: String,
}

/// Parses a bounds file. Unlike facts files, a cell may carry several
/// bounds.
pub fn parse_bounds(text: &str, store: &GameStore) -> Result<Vec<BoundFact>, FactsError> {
    let mut out = Vec::new();
    for (line, record) in records(text)? {
        let parse_size = |s: Option<&str>| s.and_then(|s| s.parse::<usize>().ok()).filter(|&v| v >= 1);
        let (Some(m), Some(n), Some(text)) = (parse_size(record.get(0)), parse_size(record.get(1)), record.get(2)) else {
            return Err(FactsError::Parse {
                line,
                message: "expected m,n,game".into(),
            });
        };
        let bound = store.parse(text).map_err(|e| FactsError::BadGame {
            line,
            text: text.to_string(),
            message: e.to_string(),
        })?;
        let source = record.get(3).filter(|s| !s.is_empty()).unwrap_or("unknown");
        out.push(BoundFact {
            m,
            n,
            bound,
            source: source.to_string(),
        });
    }
    Ok(out)
}

pub fn load_bounds(path: impl AsRef<Path>, store: &GameStore) -> Result<Vec<BoundFact>, FactsError> {
    parse_bounds(&read(path.as_ref())?, store)
}
