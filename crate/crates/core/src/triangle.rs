//! Row-by-row construction of the hyperbolic Pascal triangle.
//!
//! Every vertex of row `n` sends edges down to row `n + 1`: two for a winger,
//! `q - 2` for a type-A vertex and `q - 1` for a type-B vertex. The outermost
//! edges of neighbouring vertices meet in a single type-A vertex whose value
//! is the sum of both ascendants; every other descendant is type B and copies
//! its single ascendant's value. Wingers close off each row with value 1.
//!
//! Rows grow roughly like `(q - 2)^n`, so everything here streams with a
//! two-row window and is guarded by a [`CellCap`].

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::cap::CellCap;
use crate::error::{Error, Result};
use crate::mosaic::Mosaic;
use crate::sequences;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    /// The single vertex of row 0.
    Base,
    Winger,
    TypeA,
    TypeB,
}

impl NodeKind {
    /// Short token used by the table formats.
    pub fn token(self) -> &'static str {
        match self {
            NodeKind::Base => "Base",
            NodeKind::Winger => "W",
            NodeKind::TypeA => "A",
            NodeKind::TypeB => "B",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        match token {
            "Base" => Some(NodeKind::Base),
            "W" => Some(NodeKind::Winger),
            "A" => Some(NodeKind::TypeA),
            "B" => Some(NodeKind::TypeB),
            _ => None,
        }
    }
}

/// Number of edges a vertex of `kind` sends to the next row.
pub fn descendant_count(kind: NodeKind, mosaic: Mosaic) -> u32 {
    match kind {
        NodeKind::Base | NodeKind::Winger => 2,
        NodeKind::TypeA => mosaic.q() - 2,
        NodeKind::TypeB => mosaic.q() - 1,
    }
}

/// Up to two indices into the previous row, in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Ascendants {
    idx: [usize; 2],
    len: u8,
}

impl Ascendants {
    pub fn none() -> Self {
        Ascendants::default()
    }

    pub fn one(i: usize) -> Self {
        Ascendants { idx: [i, 0], len: 1 }
    }

    pub fn two(left: usize, right: usize) -> Self {
        debug_assert!(left < right);
        Ascendants {
            idx: [left, right],
            len: 2,
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.idx[..usize::from(self.len)]
    }

    pub fn len(&self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    kind: NodeKind,
    value: BigUint,
    ascendants: Ascendants,
}

impl Node {
    pub fn kind(&self) -> NodeKind {
        self.kind
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn ascendants(&self) -> &[usize] {
        self.ascendants.as_slice()
    }
}

/// One level of the triangle. Rows are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    n: usize,
    nodes: Vec<Node>,
}

impl Row {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn values(&self) -> impl DoubleEndedIterator<Item = &BigUint> + '_ {
        self.nodes.iter().map(|node| &node.value)
    }

    pub fn kinds(&self) -> impl DoubleEndedIterator<Item = NodeKind> + '_ {
        self.nodes.iter().map(|node| node.kind)
    }

    pub fn sum(&self) -> BigUint {
        self.values().sum()
    }

    pub fn is_value_palindrome(&self) -> bool {
        let half = self.len() / 2;
        self.values().take(half).eq(self.values().rev().take(half))
    }

    pub fn is_kind_palindrome(&self) -> bool {
        let half = self.len() / 2;
        self.kinds().take(half).eq(self.kinds().rev().take(half))
    }

    /// Length of the row that [`next_row`] would build from this one.
    pub fn successor_len(&self, mosaic: Mosaic) -> u64 {
        let fanout: u64 = self
            .kinds()
            .map(|kind| u64::from(descendant_count(kind, mosaic) - 2))
            .sum();
        2 + fanout + self.len() as u64 - 1
    }
}

/// Row 0 (the base vertex) and row 1 (two wingers hanging off it).
pub fn initial_rows(mosaic: Mosaic) -> (Row, Row) {
    let base = Row {
        n: 0,
        nodes: vec![Node {
            kind: NodeKind::Base,
            value: BigUint::one(),
            ascendants: Ascendants::none(),
        }],
    };
    let first = build_successor(mosaic, &base);
    (base, first)
}

/// Grows the row below `row`. Works from row 0 as well.
pub fn next_row(mosaic: Mosaic, row: &Row, cap: CellCap) -> Result<Row> {
    let len = row.successor_len(mosaic);
    if len > cap.get() {
        return Err(Error::CapExceeded {
            row: row.n + 1,
            row_cells: len,
            total_cells: len,
            cap: cap.get(),
        });
    }
    Ok(build_successor(mosaic, row))
}

fn build_successor(mosaic: Mosaic, row: &Row) -> Row {
    let prev = &row.nodes;
    let last = prev.len() - 1;
    let mut nodes = Vec::with_capacity(row.successor_len(mosaic) as usize);

    nodes.push(Node {
        kind: NodeKind::Winger,
        value: prev[0].value.clone(),
        ascendants: Ascendants::one(0),
    });
    for (i, node) in prev.iter().enumerate() {
        for _ in 2..descendant_count(node.kind, mosaic) {
            nodes.push(Node {
                kind: NodeKind::TypeB,
                value: node.value.clone(),
                ascendants: Ascendants::one(i),
            });
        }
        if let Some(right) = prev.get(i + 1) {
            nodes.push(Node {
                kind: NodeKind::TypeA,
                value: &node.value + &right.value,
                ascendants: Ascendants::two(i, i + 1),
            });
        }
    }
    nodes.push(Node {
        kind: NodeKind::Winger,
        value: prev[last].value.clone(),
        ascendants: Ascendants::one(last),
    });

    Row { n: row.n + 1, nodes }
}

/// Streaming builder holding only the current row and its predecessor.
#[derive(Debug, Clone)]
pub struct RowStream {
    mosaic: Mosaic,
    cap: CellCap,
    previous: Option<Row>,
    current: Row,
    cells: u64,
}

impl RowStream {
    /// Starts at row 0, which counts one cell against the cap.
    pub fn new(mosaic: Mosaic, cap: CellCap) -> Self {
        let (base, _) = initial_rows(mosaic);
        RowStream {
            mosaic,
            cap,
            previous: None,
            current: base,
            cells: 1,
        }
    }

    pub fn mosaic(&self) -> Mosaic {
        self.mosaic
    }

    pub fn current(&self) -> &Row {
        &self.current
    }

    pub fn previous(&self) -> Option<&Row> {
        self.previous.as_ref()
    }

    /// Cells emitted so far, including the current row.
    pub fn cells(&self) -> u64 {
        self.cells
    }

    /// Builds the next row, or fails without changing state if it would push
    /// the cumulative cell count past the cap.
    pub fn advance(&mut self) -> Result<&Row> {
        let len = self.current.successor_len(self.mosaic);
        let total = self.cells.saturating_add(len);
        if total > self.cap.get() {
            return Err(Error::CapExceeded {
                row: self.current.n + 1,
                row_cells: len,
                total_cells: total,
                cap: self.cap.get(),
            });
        }
        let next = build_successor(self.mosaic, &self.current);
        self.previous = Some(std::mem::replace(&mut self.current, next));
        self.cells = total;
        Ok(&self.current)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildSummary {
    pub rows: usize,
    pub cells: u64,
}

/// Feeds rows `0..=n_max` to `sink` in order.
///
/// On a cap violation the rows already delivered stay delivered and the
/// error names the first row that did not fit.
pub fn build_stream<F>(mosaic: Mosaic, n_max: usize, cap: CellCap, mut sink: F) -> Result<BuildSummary>
where
    F: FnMut(&Row),
{
    let mut stream = RowStream::new(mosaic, cap);
    sink(stream.current());
    for _ in 0..n_max {
        sink(stream.advance()?);
    }
    Ok(BuildSummary {
        rows: n_max + 1,
        cells: stream.cells(),
    })
}

/// Rows `0..=n_max`, fully retained.
pub fn collect_rows(mosaic: Mosaic, n_max: usize, cap: CellCap) -> Result<Vec<Row>> {
    let mut rows = Vec::with_capacity(n_max + 1);
    build_stream(mosaic, n_max, cap, |row| rows.push(row.clone()))?;
    Ok(rows)
}

/// Row `n` alone; earlier rows are dropped as the stream advances.
pub fn row(mosaic: Mosaic, n: usize, cap: CellCap) -> Result<Row> {
    let mut stream = RowStream::new(mosaic, cap);
    for _ in 0..n {
        stream.advance()?;
    }
    Ok(stream.current)
}

/// The `k`-th element of row `n`.
pub fn element(mosaic: Mosaic, n: usize, k: u64, cap: CellCap) -> Result<BigUint> {
    let len = sequences::row_count(mosaic, n);
    if BigInt::from(k) >= len {
        return Err(Error::IndexOutOfRange {
            n,
            k,
            len: len.to_string(),
        });
    }
    let row = row(mosaic, n, cap)?;
    let k = k.to_usize().expect("index below an in-memory row length");
    Ok(row.nodes[k].value.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(q: u32) -> Mosaic {
        Mosaic::new(q).unwrap()
    }

    fn values(row: &Row) -> Vec<u64> {
        row.values().map(|v| v.to_u64().unwrap()).collect()
    }

    fn tokens(row: &Row) -> String {
        row.kinds().map(NodeKind::token).collect::<Vec<_>>().join(" ")
    }

    #[test]
    fn descendant_counts() {
        assert_eq!(descendant_count(NodeKind::Winger, q(6)), 2);
        assert_eq!(descendant_count(NodeKind::TypeA, q(6)), 4);
        assert_eq!(descendant_count(NodeKind::TypeB, q(4)), 3);
        assert_eq!(descendant_count(NodeKind::Base, q(9)), 2);
    }

    #[test]
    fn first_two_rows() {
        for mosaic in [q(4), q(5), q(6), q(11)] {
            let (base, first) = initial_rows(mosaic);
            assert_eq!(base.n(), 0);
            assert_eq!(values(&base), [1]);
            assert_eq!(base.nodes()[0].kind(), NodeKind::Base);
            assert!(base.nodes()[0].ascendants().is_empty());

            assert_eq!(first.n(), 1);
            assert_eq!(values(&first), [1, 1]);
            assert_eq!(tokens(&first), "W W");
            assert!(first.nodes().iter().all(|node| node.ascendants() == [0]));
        }
    }

    #[test]
    fn q6_rows_by_hand() {
        let rows = collect_rows(q(6), 4, CellCap::default()).unwrap();
        assert_eq!(values(&rows[2]), [1, 2, 1]);
        assert_eq!(values(&rows[3]), [1, 3, 2, 2, 3, 1]);
        assert_eq!(tokens(&rows[3]), "W A B B A W");
        assert_eq!(
            values(&rows[4]),
            [1, 4, 3, 3, 5, 2, 2, 2, 4, 2, 2, 2, 5, 3, 3, 4, 1]
        );
        assert_eq!(rows[4].len(), 17);
        assert_eq!(rows[3].sum(), BigUint::from(12u32));
        assert_eq!(rows[4].sum(), BigUint::from(48u32));
    }

    #[test]
    fn q4_is_classical() {
        let rows = collect_rows(q(4), 4, CellCap::default()).unwrap();
        assert_eq!(values(&rows[3]), [1, 3, 3, 1]);
        assert_eq!(values(&rows[4]), [1, 4, 6, 4, 1]);
        assert!(rows.iter().flat_map(|r| r.kinds()).all(|k| k != NodeKind::TypeB));
    }

    #[test]
    fn links_follow_the_rule() {
        let rows = collect_rows(q(5), 3, CellCap::default()).unwrap();
        // row 2: W A W, row 3: W A B A W for q = 5
        assert_eq!(tokens(&rows[3]), "W A B A W");
        let links: Vec<&[usize]> = rows[3].nodes().iter().map(Node::ascendants).collect();
        assert_eq!(links, [&[0][..], &[0, 1], &[1], &[1, 2], &[2]]);
    }

    #[test]
    fn stream_summary_and_sizes() {
        let mut sizes = Vec::new();
        let summary = build_stream(q(6), 5, CellCap::default(), |row| sizes.push(row.len())).unwrap();
        assert_eq!(sizes, [1, 2, 3, 6, 17, 58]);
        assert_eq!(summary, BuildSummary { rows: 6, cells: 87 });

        let summary = build_stream(q(5), 0, CellCap::default(), |_| {}).unwrap();
        assert_eq!(summary, BuildSummary { rows: 1, cells: 1 });

        let rows = collect_rows(q(10), 2, CellCap::default()).unwrap();
        assert_eq!(rows.iter().map(Row::len).collect::<Vec<_>>(), [1, 2, 3]);
    }

    #[test]
    fn stream_stops_at_cap() {
        let mut seen = Vec::new();
        let err = build_stream(q(6), 5, CellCap::new(30).unwrap(), |row| seen.push(row.n())).unwrap_err();
        // 1 + 2 + 3 + 6 + 17 = 29 fits, row 5 (58 cells) does not
        assert_eq!(seen, [0, 1, 2, 3, 4]);
        assert_eq!(
            err,
            Error::CapExceeded {
                row: 5,
                row_cells: 58,
                total_cells: 87,
                cap: 30
            }
        );
        assert!(build_stream(q(6), 5, CellCap::new(87).unwrap(), |_| {}).is_ok());
    }

    #[test]
    fn next_row_cap_is_per_row() {
        let rows = collect_rows(q(6), 3, CellCap::default()).unwrap();
        let err = next_row(q(6), &rows[3], CellCap::new(16).unwrap()).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { row: 4, row_cells: 17, .. }));
        assert_eq!(next_row(q(6), &rows[3], CellCap::new(17).unwrap()).unwrap().len(), 17);
    }

    #[test]
    fn elements() {
        let cap = CellCap::default();
        assert_eq!(element(q(6), 4, 4, cap).unwrap(), BigUint::from(5u32));
        assert_eq!(element(q(4), 4, 2, cap).unwrap(), BigUint::from(6u32));
        for mosaic in [q(4), q(5), q(9)] {
            for n in 0..6 {
                assert_eq!(element(mosaic, n, 0, cap).unwrap(), BigUint::one());
            }
        }
        assert!(matches!(
            element(q(6), 4, 17, cap),
            Err(Error::IndexOutOfRange { n: 4, k: 17, .. })
        ));
        assert!(matches!(
            element(q(6), 5, 0, CellCap::new(40).unwrap()),
            Err(Error::CapExceeded { row: 5, .. })
        ));
    }

    #[test]
    fn deterministic() {
        let a = collect_rows(q(7), 5, CellCap::default()).unwrap();
        let b = collect_rows(q(7), 5, CellCap::default()).unwrap();
        assert_eq!(a, b);
    }
}
