//! Tab-separated outcome tables: row `m`, column `n`, blank for unknown.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::rules::{Cell, FactTable, OutcomeConstraint};

use super::facts::FactsError;

/// A cell where a table disagrees with the expected one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub cell: Cell,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableReport {
    pub max_m: usize,
    pub max_n: usize,
    /// The grid: a header row of widths, then one row per height.
    pub tsv: String,
    /// `m`, `n`, code and the chain of facts that produced it, for every
    /// known cell.
    pub provenance: String,
    pub mismatches: Vec<Mismatch>,
}

pub fn render_table(t: &FactTable, max_m: usize, max_n: usize) -> TableReport {
    let mut tsv = String::from("m\\n");
    for n in 1..=max_n {
        write!(tsv, "\t{n}").unwrap();
    }
    tsv.push('\n');
    let mut provenance = String::from("m\tn\tcode\tderivation\n");
    for m in 1..=max_m {
        write!(tsv, "{m}").unwrap();
        for n in 1..=max_n {
            let c = t.get(m, n);
            write!(tsv, "\t{}", c.code()).unwrap();
            if !c.is_full() {
                let chain: Vec<String> = t
                    .history(m, n)
                    .iter()
                    .map(|f| format!("{} by {}", f.constraint, f.provenance))
                    .collect();
                writeln!(provenance, "{m}\t{n}\t{c}\t{}", chain.join("; ")).unwrap();
            }
        }
        tsv.push('\n');
    }
    TableReport {
        max_m,
        max_n,
        tsv,
        provenance,
        mismatches: Vec::new(),
    }
}

impl TableReport {
    /// Fills in the mismatches against `expected`, looking only at cells the
    /// expected table has a column for.
    pub fn compare(&mut self, t: &FactTable, expected: &BTreeMap<Cell, OutcomeConstraint>) {
        self.mismatches = mismatches(t, expected, self.max_m, self.max_n);
    }
}

/// Cells inside `max_m x max_n` where `t` and `expected` disagree.
pub fn mismatches(
    t: &FactTable,
    expected: &BTreeMap<Cell, OutcomeConstraint>,
    max_m: usize,
    max_n: usize,
) -> Vec<Mismatch> {
    expected
        .iter()
        .filter(|(&(m, n), _)| m <= max_m && n <= max_n)
        .filter(|(&(m, n), &c)| t.get(m, n) != c)
        .map(|(&(m, n), c)| Mismatch {
            cell: (m, n),
            expected: c.code(),
            found: t.get(m, n).code(),
        })
        .collect()
}

/// Reads a table in the rendered format. Rows may be ragged; blank cells
/// map to the full set, cells past a row's end are absent.
pub fn parse_table(text: &str) -> Result<BTreeMap<Cell, OutcomeConstraint>, FactsError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let Some((_, header)) = lines.next() else {
        return Ok(BTreeMap::new());
    };
    let widths: Vec<usize> = header
        .split('\t')
        .skip(1)
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| FactsError::Parse {
            line: 1,
            message: "header must list widths".into(),
        })?;
    let mut out = BTreeMap::new();
    for (i, line) in lines {
        let lineno = i as u64 + 1;
        let mut fields = line.split('\t');
        let m: usize = fields
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| FactsError::Parse {
                line: lineno,
                message: "row must start with a height".into(),
            })?;
        for (k, field) in fields.enumerate() {
            let Some(&n) = widths.get(k) else {
                return Err(FactsError::Parse {
                    line: lineno,
                    message: "more cells than header columns".into(),
                });
            };
            let code = field.trim();
            let c = if code.is_empty() {
                OutcomeConstraint::FULL
            } else {
                code.parse().map_err(|_| FactsError::BadCode {
                    line: lineno,
                    code: code.to_string(),
                })?
            };
            out.insert((m, n), c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::facts::parse_facts;

    #[test]
    fn renders_codes_and_blanks() {
        let t = parse_facts("1,1,2,a,\n2,2,1,a,\n1,3,1H,a,\n").unwrap();
        let r = render_table(&t, 2, 3);
        assert_eq!(r.tsv, "m\\n\t1\t2\t3\n1\t2\t\t1H\n2\t\t1\t\n");
        assert_eq!(r.provenance.lines().count(), 4);
        assert!(r.provenance.contains("1\t3\t1H\t1H by imported(a)"));
    }

    #[test]
    fn codes_round_trip_through_the_grid() {
        let text: String = OutcomeConstraint::FILE_CODES
            .iter()
            .enumerate()
            .map(|(i, code)| format!("{},{},{code},t,\n", i / 4 + 1, i % 4 + 1))
            .collect();
        let t = parse_facts(&text).unwrap();
        let grid = parse_table(&render_table(&t, 3, 4).tsv).unwrap();
        for ((m, n), c) in t.iter() {
            assert_eq!(grid[&(m, n)], c);
        }
        assert!(mismatches(&t, &grid, 3, 4).is_empty());
    }

    #[test]
    fn ragged_expected_tables() {
        let expected = parse_table("m\\n\t1\t2\t3\n1\t2\tH\n2\tV\n").unwrap();
        assert_eq!(expected.len(), 3);
        let t = parse_facts("1,1,2,a,\n1,2,1H,a,\n").unwrap();
        let found = mismatches(&t, &expected, 5, 5);
        assert_eq!(found.len(), 2);
        assert_eq!(found[0], Mismatch { cell: (1, 2), expected: "H".into(), found: "1H".into() });
        assert_eq!(found[1].found, "");
        assert!(parse_table("m\\n\t1\n1\t2\tH\n").is_err());
    }
}
