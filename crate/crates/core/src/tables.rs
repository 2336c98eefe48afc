//! Reference tables of `k = 4` occurrence counts, embedded as CSV, with
//! regeneration and cell-by-cell verification.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::counting::count_block_series;
use crate::gf::{ogf_digit, ogf_factor2};
use crate::words::{KParam, Word};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TableId {
    #[serde(rename = "digits-k4")]
    DigitsK4,
    #[serde(rename = "B1-k4")]
    B1K4,
    #[serde(rename = "len2-mixed-k4")]
    Len2MixedK4,
}

impl TableId {
    pub const ALL: [TableId; 3] = [TableId::DigitsK4, TableId::B1K4, TableId::Len2MixedK4];

    pub fn name(self) -> &'static str {
        match self {
            TableId::DigitsK4 => "digits-k4",
            TableId::B1K4 => "B1-k4",
            TableId::Len2MixedK4 => "len2-mixed-k4",
        }
    }

    fn csv(self) -> &'static str {
        match self {
            TableId::DigitsK4 => include_str!("../data/digits-k4.csv"),
            TableId::B1K4 => include_str!("../data/B1-k4.csv"),
            TableId::Len2MixedK4 => include_str!("../data/len2-mixed-k4.csv"),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown table {s:?}")))
    }
}

/// Layout of one table: which factors, which iterates, and how the columns group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableSpec {
    pub id: TableId,
    pub k: KParam,
    pub first_row: usize,
    pub last_row: usize,
    /// Column labels as printed, letters standing for 10, 11, 12, 13.
    pub columns: Vec<String>,
    /// `(title, number of columns)` for each column group.
    pub groups: Vec<(String, usize)>,
}

impl TableSpec {
    pub fn factors(&self) -> Vec<Word> {
        self.columns
            .iter()
            .map(|c| c.parse().expect("table labels are valid words"))
            .collect()
    }

    pub fn rows(&self) -> std::ops::RangeInclusive<usize> {
        self.first_row..=self.last_row
    }
}

fn labels(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

fn groups(titles: &[&str], width: usize) -> Vec<(String, usize)> {
    titles.iter().map(|t| (t.to_string(), width)).collect()
}

pub fn spec(id: TableId) -> TableSpec {
    let k = KParam::new(4).expect("k = 4");
    match id {
        TableId::DigitsK4 => TableSpec {
            id,
            k,
            first_row: 0,
            last_row: 15,
            columns: labels("0 1 2 3 4 5 6 7 8 9 a b"),
            groups: groups(&["m = 0", "m = 1", "m = 2"], 4),
        },
        TableId::B1K4 => TableSpec {
            id,
            k,
            first_row: 4,
            last_row: 19,
            columns: labels("14 24 34 44 58 68 78 88 9c ac bc cc"),
            groups: groups(&["i = 0", "i = 1", "i = 2"], 4),
        },
        TableId::Len2MixedK4 => TableSpec {
            id,
            k,
            first_row: 1,
            last_row: 16,
            columns: labels("10 20 30 40 50 54 64 74 84 94 98 a8 b8 c8 d8"),
            groups: groups(&["B3", "B1, i = 0", "B1, i = 1"], 5),
        },
    }
}

/// A printed cell known to be wrong, with its recomputed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub table: TableId,
    pub n: usize,
    pub column: &'static str,
    pub printed: u64,
    pub corrected: u64,
}

/// Cells whose embedded values disagree with every counting method.
pub const ERRATA: &[Erratum] = &[
    Erratum { table: TableId::Len2MixedK4, n: 14, column: "a8", printed: 38, corrected: 36 },
    Erratum { table: TableId::Len2MixedK4, n: 15, column: "b8", printed: 38, corrected: 36 },
    Erratum { table: TableId::Len2MixedK4, n: 16, column: "c8", printed: 38, corrected: 36 },
];

fn erratum(table: TableId, n: usize, column: &str) -> Option<&'static Erratum> {
    ERRATA
        .iter()
        .find(|e| e.table == table && e.n == n && e.column == column)
}

/// Counts laid out by row (iterate index) and column (factor).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub spec: TableSpec,
    #[serde(serialize_with = "decimal_rows")]
    pub cells: Vec<Vec<BigUint>>,
}

fn decimal_rows<S: serde::Serializer>(rows: &[Vec<BigUint>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        rows.iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
    )
}

impl Table {
    pub fn get(&self, n: usize, column: usize) -> &BigUint {
        &self.cells[n - self.spec.first_row][column]
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("n,{}\n", self.spec.columns.join(","));
        for (n, row) in self.spec.rows().zip(&self.cells) {
            let row: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("{n},{}\n", row.join(",")));
        }
        out
    }

    /// Markdown with a group-title row above the column labels.
    pub fn to_markdown(&self) -> String {
        let mut titles = vec![String::new()];
        for (title, width) in &self.spec.groups {
            titles.push(title.clone());
            titles.extend(std::iter::repeat_n(String::new(), width - 1));
        }
        let mut out = format!("| {} |\n", titles.join(" | "));
        out.push_str(&format!("|{}\n", "---:|".repeat(titles.len())));
        out.push_str(&format!("| n | {} |\n", self.spec.columns.join(" | ")));
        for (n, row) in self.spec.rows().zip(&self.cells) {
            let row: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("| {n} | {} |\n", row.join(" | ")));
        }
        out
    }
}

/// The embedded reference copy, exactly as transcribed.
pub fn golden(id: TableId) -> Table {
    let spec = spec(id);
    let mut lines = id.csv().lines();
    let header = lines.next().expect("header row");
    assert_eq!(header, format!("n,{}", spec.columns.join(",")), "{id} header");
    let cells: Vec<Vec<BigUint>> = lines
        .zip(spec.rows())
        .map(|(line, n)| {
            let mut fields = line.split(',');
            assert_eq!(fields.next(), Some(n.to_string().as_str()), "{id} row {n}");
            fields.map(|f| f.parse().expect("decimal cell")).collect()
        })
        .collect();
    Table { spec, cells }
}

fn closed_form_column(k: KParam, factor: &Word, upto: usize) -> Result<Vec<BigUint>> {
    let gf = match factor.len() {
        1 => ogf_digit(k, factor.digits()[0])?,
        2 => ogf_factor2(k, factor)?,
        got => return Err(Error::WrongLength { expected: 2, got }),
    };
    gf.series(upto)?
        .into_iter()
        .map(|c: BigInt| c.try_into().map_err(|_| Error::NotDivisible))
        .collect()
}

fn block_column(k: KParam, factor: &Word, upto: usize) -> Result<Vec<BigUint>> {
    Ok(count_block_series(k, factor, upto)?.values)
}

/// Recomputes a table with the block engine.
pub fn regenerate(id: TableId) -> Result<Table> {
    let spec = spec(id);
    let columns: Vec<Vec<BigUint>> = spec
        .factors()
        .iter()
        .map(|f| block_column(spec.k, f, spec.last_row))
        .collect::<Result<_>>()?;
    let cells = spec
        .rows()
        .map(|n| columns.iter().map(|c| c[n].clone()).collect())
        .collect();
    Ok(Table { spec, cells })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub n: usize,
    pub column: String,
    pub golden: String,
    pub closed_form: String,
    pub block: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub table: TableId,
    pub rows: usize,
    pub columns: usize,
    pub cells: usize,
    pub strict: bool,
    /// Closed form and block engine disagree.
    pub engine_disagreements: Vec<CellReport>,
    /// Both engines agree with each other but not with the reference copy.
    pub mismatches: Vec<CellReport>,
    /// Listed errata whose corrected value both engines reproduce.
    pub errata: Vec<CellReport>,
    pub pass: bool,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{verdict} {}: {}x{} cells, {} mismatches, {} errata",
            self.table,
            self.rows,
            self.columns,
            self.mismatches.len() + self.engine_disagreements.len(),
            self.errata.len()
        )?;
        for (label, list) in [
            ("engine disagreement", &self.engine_disagreements),
            ("mismatch", &self.mismatches),
            ("erratum", &self.errata),
        ] {
            for c in list {
                writeln!(
                    f,
                    "  {label}: n={} column {}: reference {}, closed form {}, block {}",
                    c.n, c.column, c.golden, c.closed_form, c.block
                )?;
            }
        }
        Ok(())
    }
}

/// Recomputes every cell by the closed form and by the block engine and
/// compares both with the reference copy. Listed errata count as failures
/// only when `strict` is set.
pub fn verify(id: TableId, strict: bool) -> Result<VerifyReport> {
    let golden = golden(id);
    let spec = &golden.spec;
    let mut report = VerifyReport {
        table: id,
        rows: spec.last_row - spec.first_row + 1,
        columns: spec.columns.len(),
        cells: 0,
        strict,
        engine_disagreements: Vec::new(),
        mismatches: Vec::new(),
        errata: Vec::new(),
        pass: false,
    };
    for (j, (label, factor)) in spec.columns.iter().zip(spec.factors()).enumerate() {
        let ogf = closed_form_column(spec.k, &factor, spec.last_row)?;
        let block = block_column(spec.k, &factor, spec.last_row)?;
        for n in spec.rows() {
            report.cells += 1;
            let reference = golden.get(n, j);
            let cell = CellReport {
                n,
                column: label.clone(),
                golden: reference.to_string(),
                closed_form: ogf[n].to_string(),
                block: block[n].to_string(),
            };
            if ogf[n] != block[n] {
                report.engine_disagreements.push(cell);
            } else if &block[n] != reference {
                match erratum(id, n, label) {
                    Some(e) if BigUint::from(e.printed) == *reference && BigUint::from(e.corrected) == block[n] => {
                        report.errata.push(cell)
                    }
                    _ => report.mismatches.push(cell),
                }
            }
        }
    }
    report.pass = report.engine_disagreements.is_empty()
        && report.mismatches.is_empty()
        && (!strict || report.errata.is_empty());
    Ok(report)
}
