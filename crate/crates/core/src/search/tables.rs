use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SchurError};
use crate::search::{search_exact, SearchOptions};
use crate::spec::ProblemSpec;

const BUNDLED: &str = include_str!("../../data/tables.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableName {
    Table1,
    Table2,
    Table3,
}

impl TableName {
    pub const ALL: [TableName; 3] = [TableName::Table1, TableName::Table2, TableName::Table3];

    fn key(self) -> &'static str {
        match self {
            TableName::Table1 => "table1",
            TableName::Table2 => "table2",
            TableName::Table3 => "table3",
        }
    }
}

impl fmt::Display for TableName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for TableName {
    type Err = SchurError;

    fn from_str(s: &str) -> Result<Self> {
        TableName::ALL
            .into_iter()
            .find(|t| t.key() == s)
            .ok_or_else(|| SchurError::Contract(format!("unknown table {s:?}; expected table1, table2 or table3")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    Exact,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub ks: Vec<usize>,
    pub expected: usize,
    pub kind: RowKind,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TableRow {
    pub fn spec(&self) -> Result<ProblemSpec> {
        ProblemSpec::new(self.ks.clone())
    }
}

#[derive(Deserialize)]
struct BundledTable {
    #[allow(dead_code)]
    caption: String,
    rows: Vec<TableRow>,
}

/// Rows of a bundled table of known values.
pub fn bundled_table(name: TableName) -> Result<Vec<TableRow>> {
    let mut all: std::collections::BTreeMap<String, BundledTable> = serde_json::from_str(BUNDLED)?;
    all.remove(name.key())
        .map(|t| t.rows)
        .ok_or_else(|| SchurError::Contract(format!("bundled data lacks {name}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Agreement {
    Agree,
    Disagree,
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRowResult {
    pub row: TableRow,
    pub computed: Option<usize>,
    pub agreement: Agreement,
}

/// Searches every exact row whose expected value is at most `max_value`.
/// Rows that are too large, only bounded, or that run out of budget are
/// marked skipped.
pub fn reproduce_table(
    name: TableName,
    options: &SearchOptions,
    max_value: Option<usize>,
) -> Result<Vec<TableRowResult>> {
    let rows = bundled_table(name)?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let skip = |reason: String| Agreement::Skipped { reason };
        let (computed, agreement) = if row.kind == RowKind::Lower {
            (None, skip("only a lower bound is known".into()))
        } else if max_value.is_some_and(|m| row.expected > m) {
            (
                None,
                skip(format!("expected value above the size limit {}", max_value.unwrap())),
            )
        } else {
            match search_exact(&row.spec()?, options) {
                Ok(found) if found.value == row.expected => (Some(found.value), Agreement::Agree),
                Ok(found) => (Some(found.value), Agreement::Disagree),
                Err(abort) => (None, skip(abort.to_string())),
            }
        };
        out.push(TableRowResult {
            row,
            computed,
            agreement,
        });
    }
    Ok(out)
}
