//! Plain-text table, CSV, JSON and DOT output.
//!
//! Big integers always travel as decimal strings in JSON.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::analysis::SumsReport;
use crate::error::{Error, Result};
use crate::sequences;
use crate::triangle::{NodeKind, Row};
use crate::Mosaic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotStyle {
    pub color_a: String,
    pub color_b: String,
    pub color_winger: String,
    pub shape_a: String,
    pub shape_b: String,
    pub shape_winger: String,
    pub rank_by_row: bool,
}

impl Default for DotStyle {
    fn default() -> Self {
        DotStyle {
            color_a: "red".into(),
            color_b: "cyan".into(),
            color_winger: "white".into(),
            shape_a: "circle".into(),
            shape_b: "diamond".into(),
            shape_winger: "diamond".into(),
            rank_by_row: true,
        }
    }
}

impl DotStyle {
    fn attributes(&self, kind: NodeKind) -> (&str, &str) {
        match kind {
            NodeKind::TypeA => (&self.shape_a, &self.color_a),
            NodeKind::TypeB => (&self.shape_b, &self.color_b),
            NodeKind::Winger | NodeKind::Base => (&self.shape_winger, &self.color_winger),
        }
    }
}

fn node_id(n: usize, k: usize) -> String {
    format!("n{n}_k{k}")
}

fn check_contiguous<'a>(ns: impl Iterator<Item = usize> + 'a) -> Result<()> {
    for (expected, found) in ns.enumerate() {
        if expected != found {
            return Err(Error::NonContiguousRows { expected, found });
        }
    }
    Ok(())
}

/// Digraph of the triangle, edges running from ascendant to descendant.
pub fn to_dot(rows: &[Row], style: &DotStyle) -> Result<String> {
    check_contiguous(rows.iter().map(Row::n))?;
    let mut out = String::new();
    out.push_str("digraph hpt {\n");
    out.push_str("  rankdir=TB;\n");
    out.push_str("  node [style=filled, fontsize=10];\n");
    for row in rows {
        for (k, node) in row.nodes().iter().enumerate() {
            let (shape, color) = style.attributes(node.kind());
            writeln!(
                out,
                "  {} [label=\"{}\", shape={shape}, fillcolor=\"{color}\"];",
                node_id(row.n(), k),
                node.value()
            )
            .unwrap();
        }
    }
    for pair in rows.windows(2) {
        let (above, row) = (&pair[0], &pair[1]);
        for (k, node) in row.nodes().iter().enumerate() {
            for &i in node.ascendants() {
                writeln!(out, "  {} -> {};", node_id(above.n(), i), node_id(row.n(), k)).unwrap();
            }
        }
    }
    if style.rank_by_row {
        for row in rows {
            let ids: Vec<String> = (0..row.len()).map(|k| node_id(row.n(), k)).collect();
            writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
    Plain,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            "plain" => Ok(TableFormat::Plain),
            other => Err(Error::UnknownFormat(other.to_owned())),
        }
    }
}

/// Kinds and values of one row, without ascendant links. This is what the
/// row tables carry and what parsing them gives back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowRecord {
    pub n: usize,
    pub kinds: Vec<NodeKind>,
    pub values: Vec<BigUint>,
}

impl From<&Row> for RowRecord {
    fn from(row: &Row) -> Self {
        RowRecord {
            n: row.n(),
            kinds: row.kinds().collect(),
            values: row.values().cloned().collect(),
        }
    }
}

pub enum TableSource<'a> {
    Rows { q: u32, rows: &'a [RowRecord] },
    Report { report: &'a SumsReport, weights: Option<(BigInt, BigInt)> },
}

pub fn to_table(source: &TableSource<'_>, format: TableFormat) -> Result<String> {
    match (source, format) {
        (TableSource::Rows { rows, .. }, TableFormat::Csv) => Ok(rows_to_csv(rows)),
        (TableSource::Rows { q, rows }, TableFormat::Json) => Ok(rows_to_json(*q, rows)),
        (TableSource::Rows { rows, .. }, TableFormat::Plain) => Ok(plain_table(
            &["n", "k", "type", "value"],
            row_cells(rows).collect(),
        )),
        (TableSource::Report { report, weights }, format) => report_table(report, weights.as_ref(), format),
    }
}

fn row_cells(rows: &[RowRecord]) -> impl Iterator<Item = Vec<String>> + '_ {
    rows.iter().flat_map(|row| {
        row.kinds.iter().zip(&row.values).enumerate().map(move |(k, (kind, value))| {
            vec![
                row.n.to_string(),
                k.to_string(),
                kind.token().to_owned(),
                value.to_string(),
            ]
        })
    })
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish_csv(writer: csv::Writer<Vec<u8>>) -> String {
    let bytes = writer.into_inner().expect("in-memory writer");
    String::from_utf8(bytes).expect("csv output is utf-8")
}

pub fn rows_to_csv(rows: &[RowRecord]) -> String {
    let mut writer = csv_writer();
    writer.write_record(["n", "k", "type", "value"]).unwrap();
    for record in row_cells(rows) {
        writer.write_record(&record).unwrap();
    }
    finish_csv(writer)
}

fn parse_error(record: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        record,
        message: message.into(),
    }
}

/// Inverse of [`rows_to_csv`].
pub fn parse_rows_csv(text: &str) -> Result<Vec<RowRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| parse_error(0, e.to_string()))?;
    if headers != vec!["n", "k", "type", "value"] {
        return Err(parse_error(0, format!("unexpected header {headers:?}")));
    }
    let mut rows: Vec<RowRecord> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 1;
        let record = record.map_err(|e| parse_error(line, e.to_string()))?;
        let [n, k, kind, value] = [0, 1, 2, 3].map(|c| record.get(c).unwrap_or(""));
        let n: usize = n.parse().map_err(|_| parse_error(line, format!("bad row index {n:?}")))?;
        let k: usize = k.parse().map_err(|_| parse_error(line, format!("bad position {k:?}")))?;
        let kind = NodeKind::from_token(kind).ok_or_else(|| parse_error(line, format!("bad type {kind:?}")))?;
        let value: BigUint = value
            .parse()
            .map_err(|_| parse_error(line, format!("bad value {value:?}")))?;
        if rows.last().map(|r| r.n) != Some(n) {
            rows.push(RowRecord {
                n,
                kinds: Vec::new(),
                values: Vec::new(),
            });
        }
        let row = rows.last_mut().unwrap();
        if k != row.kinds.len() {
            return Err(parse_error(line, format!("expected position {}, found {k}", row.kinds.len())));
        }
        row.kinds.push(kind);
        row.values.push(value);
    }
    Ok(rows)
}

#[derive(Serialize, Deserialize)]
struct RowsJson {
    q: u32,
    rows: Vec<RowJson>,
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    n: usize,
    types: Vec<String>,
    values: Vec<String>,
}

pub fn rows_to_json(q: u32, rows: &[RowRecord]) -> String {
    let doc = RowsJson {
        q,
        rows: rows
            .iter()
            .map(|row| RowJson {
                n: row.n,
                types: row.kinds.iter().map(|k| k.token().to_owned()).collect(),
                values: row.values.iter().map(BigUint::to_string).collect(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("plain data");
    text.push('\n');
    text
}

/// Inverse of [`rows_to_json`]; returns `q` with the rows.
pub fn parse_rows_json(text: &str) -> Result<(u32, Vec<RowRecord>)> {
    let doc: RowsJson = serde_json::from_str(text).map_err(|e| parse_error(0, e.to_string()))?;
    let rows = doc
        .rows
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            if row.types.len() != row.values.len() {
                return Err(parse_error(i, "types and values differ in length"));
            }
            let kinds = row
                .types
                .iter()
                .map(|t| NodeKind::from_token(t).ok_or_else(|| parse_error(i, format!("bad type {t:?}"))))
                .collect::<Result<_>>()?;
            let values = row
                .values
                .iter()
                .map(|v| v.parse().map_err(|_| parse_error(i, format!("bad value {v:?}"))))
                .collect::<Result<_>>()?;
            Ok(RowRecord { n: row.n, kinds, values })
        })
        .collect::<Result<_>>()?;
    Ok((doc.q, rows))
}

#[derive(Serialize)]
struct ReportJson {
    q: u32,
    entries: Vec<EntryJson>,
    failures: Vec<FailureJson>,
}

#[derive(Serialize)]
struct EntryJson {
    n: usize,
    s: u64,
    s_hat: String,
    alt_direct: String,
    alt_closed: String,
    #[serde(rename = "subA")]
    sub_a: String,
    #[serde(rename = "subB")]
    sub_b: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    weighted: Option<String>,
}

#[derive(Serialize)]
struct FailureJson {
    identity: String,
    n: usize,
    expected: String,
    actual: String,
}

const REPORT_COLUMNS: [&str; 7] = ["n", "s", "s_hat", "alt_direct", "alt_closed", "subA", "subB"];

fn report_rows(report: &SumsReport, weights: Option<&(BigInt, BigInt)>) -> Vec<Vec<String>> {
    let mosaic = Mosaic::new(report.q).ok();
    report
        .entries
        .iter()
        .map(|e| {
            let mut cells = vec![
                e.n.to_string(),
                e.s.to_string(),
                e.s_hat.to_string(),
                e.alt_direct.to_string(),
                e.alt_closed.to_string(),
                e.sub_a.to_string(),
                e.sub_b.to_string(),
            ];
            if let (Some((v, w)), Some(mosaic)) = (weights, mosaic) {
                cells.push(sequences::weighted_alt_sum(mosaic, e.n, v, w).to_string());
            }
            cells
        })
        .collect()
}

fn report_table(report: &SumsReport, weights: Option<&(BigInt, BigInt)>, format: TableFormat) -> Result<String> {
    let mut header: Vec<&str> = REPORT_COLUMNS.to_vec();
    if weights.is_some() {
        header.push("weighted");
    }
    let rows = report_rows(report, weights);
    Ok(match format {
        TableFormat::Csv => {
            let mut writer = csv_writer();
            writer.write_record(&header).unwrap();
            for row in &rows {
                writer.write_record(row).unwrap();
            }
            finish_csv(writer)
        }
        TableFormat::Plain => plain_table(&header, rows),
        TableFormat::Json => {
            let doc = ReportJson {
                q: report.q,
                entries: rows
                    .into_iter()
                    .zip(&report.entries)
                    .map(|(mut cells, e)| EntryJson {
                        n: e.n,
                        s: e.s,
                        weighted: (cells.len() > 7).then(|| cells.pop().unwrap()),
                        s_hat: cells[2].clone(),
                        alt_direct: cells[3].clone(),
                        alt_closed: cells[4].clone(),
                        sub_a: cells[5].clone(),
                        sub_b: cells[6].clone(),
                    })
                    .collect(),
                failures: report
                    .failures
                    .iter()
                    .map(|f| FailureJson {
                        identity: f.identity.clone(),
                        n: f.n,
                        expected: f.expected.clone(),
                        actual: f.actual.clone(),
                    })
                    .collect(),
            };
            let mut text = serde_json::to_string_pretty(&doc).expect("plain data");
            text.push('\n');
            text
        }
    })
}

/// Right-aligned columns separated by two spaces.
fn plain_table(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells.zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied());
    for row in &rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{verify_range, SuiteSelection};
    use crate::triangle::collect_rows;
    use crate::CellCap;
    use proptest::prelude::*;

    fn rows(k: u32, n_max: usize) -> Vec<Row> {
        collect_rows(Mosaic::new(k).unwrap(), n_max, CellCap::default()).unwrap()
    }

    fn records(rows: &[Row]) -> Vec<RowRecord> {
        rows.iter().map(RowRecord::from).collect()
    }

    #[test]
    fn dot_counts() {
        let style = DotStyle::default();
        let dot = to_dot(&rows(6, 5), &style).unwrap();
        assert_eq!(dot.matches("[label=").count(), 87);

        let dot = to_dot(&rows(6, 1), &style).unwrap();
        assert_eq!(dot.matches("[label=").count(), 3);
        assert_eq!(dot.matches(" -> ").count(), 2);
        assert!(dot.contains("n0_k0 -> n1_k0;"));
        assert!(dot.contains("n0_k0 -> n1_k1;"));

        let dot = to_dot(&rows(6, 4), &style).unwrap();
        assert_eq!(dot.matches(" -> ").count(), 2 + 4 + 8 + 22);
        assert_eq!(dot.matches("rank=same").count(), 5);
    }

    #[test]
    fn dot_styles_by_kind() {
        let dot = to_dot(&rows(6, 3), &DotStyle::default()).unwrap();
        assert!(dot.contains("n2_k1 [label=\"2\", shape=circle, fillcolor=\"red\"];"));
        assert!(dot.contains("n3_k2 [label=\"2\", shape=diamond, fillcolor=\"cyan\"];"));
        assert!(dot.contains("n3_k0 [label=\"1\", shape=diamond, fillcolor=\"white\"];"));
        let flat = DotStyle {
            rank_by_row: false,
            ..DotStyle::default()
        };
        assert!(!to_dot(&rows(6, 3), &flat).unwrap().contains("rank=same"));
    }

    #[test]
    fn dot_rejects_gaps() {
        let r = rows(6, 3);
        let gap = vec![r[0].clone(), r[2].clone()];
        assert_eq!(
            to_dot(&gap, &DotStyle::default()),
            Err(Error::NonContiguousRows { expected: 1, found: 2 })
        );
        assert!(to_dot(&r[1..], &DotStyle::default()).is_err());
    }

    #[test]
    fn csv_row_lines() {
        let r = rows(6, 2);
        let csv = rows_to_csv(&records(&r[2..]));
        assert_eq!(csv, "n,k,type,value\n2,0,W,1\n2,1,A,2\n2,2,W,1\n");
        let csv = rows_to_csv(&records(&r[..1]));
        assert_eq!(csv, "n,k,type,value\n0,0,Base,1\n");
    }

    #[test]
    fn json_row_values() {
        let r = rows(6, 3);
        let json = rows_to_json(6, &records(&r[3..]));
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(doc["q"], 6);
        assert_eq!(doc["rows"][0]["n"], 3);
        assert_eq!(doc["rows"][0]["values"], serde_json::json!(["1", "3", "2", "2", "3", "1"]));
        assert_eq!(doc["rows"][0]["types"], serde_json::json!(["W", "A", "B", "B", "A", "W"]));
    }

    #[test]
    fn empty_report_json() {
        let json = to_table(
            &TableSource::Report {
                report: &SumsReport::empty(6),
                weights: None,
            },
            TableFormat::Json,
        )
        .unwrap();
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, serde_json::json!({"q": 6, "entries": [], "failures": []}));
    }

    #[test]
    fn report_tables() {
        let mosaic = Mosaic::new(6).unwrap();
        let report = verify_range(mosaic, 4, &SuiteSelection::all(), CellCap::default());
        let weights = Some((BigInt::from(2), BigInt::from(0)));
        let csv = to_table(&TableSource::Report { report: &report, weights }, TableFormat::Csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,s,s_hat,alt_direct,alt_closed,subA,subB,weighted");
        assert_eq!(lines[5], "4,17,48,4,4,6,-4,52");

        let json = to_table(&TableSource::Report { report: &report, weights: None }, TableFormat::Json).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(
            doc["entries"][4],
            serde_json::json!({"n": 4, "s": 17, "s_hat": "48", "alt_direct": "4",
                               "alt_closed": "4", "subA": "6", "subB": "-4"})
        );

        let plain = to_table(&TableSource::Report { report: &report, weights: None }, TableFormat::Plain).unwrap();
        let widths: Vec<usize> = plain.lines().map(str::len).collect();
        assert!(widths.windows(2).all(|w| w[0] == w[1]), "{plain}");
    }

    #[test]
    fn unknown_format() {
        assert_eq!("xml".parse::<TableFormat>(), Err(Error::UnknownFormat("xml".into())));
        assert_eq!("csv".parse::<TableFormat>(), Ok(TableFormat::Csv));
    }

    #[test]
    fn csv_parse_rejects_garbage() {
        assert!(parse_rows_csv("a,b,c,d\n").is_err());
        assert!(parse_rows_csv("n,k,type,value\n0,0,Q,1\n").is_err());
        assert!(parse_rows_csv("n,k,type,value\n0,1,Base,1\n").is_err());
        assert!(parse_rows_csv("n,k,type,value\n0,0,Base,-1\n").is_err());
    }

    proptest! {
        #[test]
        fn csv_round_trip_is_byte_identical(k in 4u32..12, n_max in 0usize..5) {
            let recs = records(&rows(k, n_max));
            let text = rows_to_csv(&recs);
            let parsed = parse_rows_csv(&text).unwrap();
            prop_assert_eq!(&parsed, &recs);
            prop_assert_eq!(rows_to_csv(&parsed), text);
        }

        #[test]
        fn json_round_trip_is_lossless(k in 4u32..12, n_max in 0usize..5) {
            let recs = records(&rows(k, n_max));
            let text = rows_to_json(k, &recs);
            let (q, parsed) = parse_rows_json(&text).unwrap();
            prop_assert_eq!(q, k);
            prop_assert_eq!(parsed, recs);
        }

        #[test]
        fn json_keeps_huge_values(digits in "[1-9][0-9]{30,80}") {
            let value: BigUint = digits.parse().unwrap();
            let rec = RowRecord { n: 0, kinds: vec![NodeKind::Base], values: vec![value] };
            let (_, parsed) = parse_rows_json(&rows_to_json(4, std::slice::from_ref(&rec))).unwrap();
            prop_assert_eq!(parsed, vec![rec]);
        }
    }
}
