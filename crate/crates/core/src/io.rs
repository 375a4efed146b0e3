//! The JSON table interchange format and the CSV / aligned-text renderings.
//!
//! ```json
//! { "n": 3, "order": 3, "unit": 0,
//!   "rows": [ [ [3,0,0],[0,3,0],[0,0,3] ],
//!             [ [0,3,0],[1,0,2],[1,1,1] ],
//!             [ [0,0,3],[1,1,1],[1,2,0] ] ] }
//! ```
//!
//! `rows[i][j]` is the multiplicity vector of `x_i * x_j`. A declared unit
//! other than `0` is moved to index `0` by exchanging the two labels.

use serde::{Deserialize, Serialize, Serializer};

use crate::enumerate::ClassEntry;
use crate::error::{Error, Result};
use crate::multiset::Multiset;
use crate::table::{MValTable, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableJson {
    pub n: u64,
    pub order: usize,
    pub unit: usize,
    pub rows: Vec<Vec<Vec<u64>>>,
}

impl From<&MValTable> for TableJson {
    fn from(t: &MValTable) -> Self {
        TableJson {
            n: t.n(),
            order: t.order(),
            unit: 0,
            rows: t
                .rows()
                .iter()
                .map(|row| row.iter().map(|m| m.counts().to_vec()).collect())
                .collect(),
        }
    }
}

pub(crate) fn serialize_tables<S: Serializer>(
    tables: &[MValTable],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(tables.iter().map(TableJson::from))
}

#[derive(Debug, Deserialize)]
struct RawTable {
    n: i64,
    order: i64,
    #[serde(default)]
    unit: i64,
    rows: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept tables whose declared unit does not satisfy the unit law.
    pub allow_nonunital: bool,
}

/// Parses and validates one table, reporting the first schema violation.
pub fn parse_table(text: &str, opts: ParseOptions) -> Result<MValTable> {
    let raw: RawTable =
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("invalid table JSON: {e}")))?;
    if raw.n < 1 {
        return Err(Error::Malformed(format!("\"n\" must be at least 1, got {}", raw.n)));
    }
    let k = raw.rows.len();
    if raw.order < 1 || raw.order as usize != k {
        return Err(Error::Malformed(format!(
            "\"order\" is {} but \"rows\" has {k} rows",
            raw.order
        )));
    }
    if raw.unit < 0 || raw.unit as usize >= k {
        return Err(Error::Malformed(format!("\"unit\" {} is not an element index", raw.unit)));
    }
    let mut rows = Vec::with_capacity(k);
    for (i, row) in raw.rows.iter().enumerate() {
        if row.len() != k {
            return Err(Error::Malformed(format!("row {i} has {} entries, expected {k}", row.len())));
        }
        let mut out = Vec::with_capacity(k);
        for (j, entry) in row.iter().enumerate() {
            if entry.len() != k {
                return Err(Error::Malformed(format!(
                    "entry ({i},{j}) has {} multiplicities, expected {k}",
                    entry.len()
                )));
            }
            if let Some(&c) = entry.iter().find(|&&c| c < 0) {
                return Err(Error::Malformed(format!("entry ({i},{j}) has negative count {c}")));
            }
            out.push(Multiset::from_counts(entry.iter().map(|&c| c as u64).collect()));
        }
        rows.push(out);
    }
    let mut table = MValTable::new_magma(raw.n as u64, rows)?;
    let unit = raw.unit as usize;
    if unit != 0 {
        let mut swap: Vec<usize> = (0..k).collect();
        swap.swap(0, unit);
        table = table.relabel(&swap);
    }
    if !opts.allow_nonunital {
        if let Some(v) = table.check_unit().first() {
            return Err(Error::Malformed(format!(
                "unit law fails at x{} * x{}: found {:?}, expected {:?}",
                v.left,
                v.right,
                v.found.counts(),
                v.expected.counts()
            )));
        }
    }
    Ok(table)
}

pub fn table_to_json(table: &MValTable) -> String {
    serde_json::to_string(&TableJson::from(table)).expect("tables serialize")
}

#[derive(Debug, Serialize)]
pub struct ViolationJson {
    pub triple: [usize; 3],
    /// `(x*y)*z` as a sorted element list.
    pub lhs: Vec<usize>,
    /// `x*(y*z)` as a sorted element list.
    pub rhs: Vec<usize>,
    pub lhs_counts: Vec<u64>,
    pub rhs_counts: Vec<u64>,
}

impl From<&Violation> for ViolationJson {
    fn from(v: &Violation) -> Self {
        ViolationJson {
            triple: [v.triple.0, v.triple.1, v.triple.2],
            lhs: v.lhs.elements(),
            rhs: v.rhs.elements(),
            lhs_counts: v.lhs.counts().to_vec(),
            rhs_counts: v.rhs.counts().to_vec(),
        }
    }
}

fn flat_header(k: usize) -> Vec<String> {
    let mut h = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for z in 0..k {
                h.push(format!("m{i}{j}_{z}"));
            }
        }
    }
    h
}

fn flat_counts(t: &MValTable) -> Vec<String> {
    t.rows()
        .iter()
        .flatten()
        .flat_map(|m| m.counts().iter().map(|c| c.to_string()))
        .collect()
}

fn csv_finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Malformed(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Malformed(format!("csv: {e}")))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Malformed(format!("csv: {e}"))
}

/// One row per table: `n`, `order`, then every multiplicity in row-major order.
pub fn tables_to_csv(tables: &[MValTable]) -> Result<String> {
    let k = tables.first().map_or(3, |t| t.order());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n".to_string(), "order".to_string()];
    header.extend(flat_header(k));
    w.write_record(&header).map_err(csv_err)?;
    for t in tables {
        let mut rec = vec![t.n().to_string(), t.order().to_string()];
        rec.extend(flat_counts(t));
        w.write_record(&rec).map_err(csv_err)?;
    }
    csv_finish(w)
}

/// One row per class: summary columns, then the representative's
/// multiplicities in row-major order.
pub fn classes_to_csv(classes: &[ClassEntry]) -> Result<String> {
    let k = classes.first().map_or(3, |c| c.representative.order());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = [
        "class", "n", "key_n", "members", "series", "matches", "group", "commutative", "reversible",
        "involutive", "star_involutive", "coset",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    header.extend(flat_header(k));
    w.write_record(&header).map_err(csv_err)?;
    for (i, c) in classes.iter().enumerate() {
        let series: Vec<String> = c.series().iter().map(|s| s.to_string()).collect();
        let matches: Vec<String> = c.matches().iter().map(|m| m.to_string()).collect();
        let p = &c.predicates;
        let mut rec = vec![
            i.to_string(),
            c.representative.n().to_string(),
            c.key.n().to_string(),
            c.members.to_string(),
            series.join(";"),
            matches.join(";"),
            p.group.to_string(),
            p.commutative.to_string(),
            p.reversible.to_string(),
            p.involutive.to_string(),
            p.star_involutive.is_some().to_string(),
            p.coset.verdict.to_string(),
        ];
        rec.extend(flat_counts(&c.representative));
        w.write_record(&rec).map_err(csv_err)?;
    }
    csv_finish(w)
}

pub fn tables_to_text(tables: &[MValTable]) -> String {
    tables
        .iter()
        .enumerate()
        .map(|(i, t)| format!("# {i}\n{t}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn free_entries(t: &MValTable) -> String {
    let k = t.order();
    let mut parts = Vec::new();
    for i in 1..k {
        for j in 1..k {
            let c: Vec<String> = t.product(i, j).counts().iter().map(|c| c.to_string()).collect();
            parts.push(format!("({})", c.join(",")));
        }
    }
    parts.join(" ")
}

pub fn classes_to_text(classes: &[ClassEntry]) -> String {
    let header = [
        "#", "n*", "members", "series", "group", "comm", "rev", "invol", "star", "coset", "free rows",
    ];
    let mut rows: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    let yn = |b: bool| if b { "y" } else { "-" }.to_string();
    for (i, c) in classes.iter().enumerate() {
        let series: Vec<String> = c.series().iter().map(|s| s.to_string()).collect();
        let p = &c.predicates;
        rows.push(vec![
            i.to_string(),
            c.key.n().to_string(),
            c.members.to_string(),
            series.join(","),
            yn(p.group),
            yn(p.commutative),
            yn(p.reversible),
            yn(p.involutive),
            yn(p.star_involutive.is_some()),
            p.coset.verdict.to_string(),
            free_entries(&c.representative),
        ]);
    }
    let cols = header.len();
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &rows {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(j, s)| {
                if j + 1 == cols {
                    s.clone()
                } else {
                    format!("{s:<w$}", w = widths[j])
                }
            })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}
