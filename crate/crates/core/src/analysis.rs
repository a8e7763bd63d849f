//! Brute-force checks of the sequence identities against constructed rows.
//!
//! Identities on the type subsums are only claimed for rows of odd length
//! (both wingers then carry a `+` sign); even-length rows are counted as
//! skipped, never as failures.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::cap::CellCap;
use crate::error::{Error, Result};
use crate::mosaic::{Mosaic, Parity};
use crate::sequences::{self, InfluenceCoefficients};
use crate::triangle::{NodeKind, Row, RowStream};

fn signed(index: usize, value: &BigUint) -> BigInt {
    let value = BigInt::from(value.clone());
    if index.is_multiple_of(2) {
        value
    } else {
        -value
    }
}

/// `Σ (-1)^i · value(i)`, index 0 positive.
pub fn alt_sum_direct(row: &Row) -> BigInt {
    row.values().enumerate().map(|(i, v)| signed(i, v)).sum()
}

/// Alternating subsums over the type-A and type-B positions, signs taken
/// from the position in the full row. Wingers and the base contribute to
/// neither.
pub fn type_subsums(row: &Row) -> (BigInt, BigInt) {
    let mut sub_a = BigInt::zero();
    let mut sub_b = BigInt::zero();
    for (i, node) in row.nodes().iter().enumerate() {
        match node.kind() {
            NodeKind::TypeA => sub_a += signed(i, node.value()),
            NodeKind::TypeB => sub_b += signed(i, node.value()),
            NodeKind::Winger | NodeKind::Base => {}
        }
    }
    (sub_a, sub_b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Skipped(&'static str),
    Fail { expected: String, actual: String },
}

impl CheckOutcome {
    fn compare<T: PartialEq + fmt::Display>(expected: T, actual: T) -> Self {
        if expected == actual {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail {
                expected: expected.to_string(),
                actual: actual.to_string(),
            }
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, CheckOutcome::Skipped(_))
    }
}

/// `s̃_n = s̃_n^(A) + s̃_n^(B) + 2` on odd-length rows.
pub fn check_decomposition(row: &Row) -> CheckOutcome {
    if row.n() == 0 {
        return CheckOutcome::Skipped("row 0 has no wingers");
    }
    if row.len().is_multiple_of(2) {
        return CheckOutcome::Skipped("even row length");
    }
    let (sub_a, sub_b) = type_subsums(row);
    CheckOutcome::compare(sub_a + sub_b + 2, alt_sum_direct(row))
}

/// Signed type subsums of one row, all the subsum recurrences need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSubsums {
    pub n: usize,
    pub len: usize,
    pub sub_a: BigInt,
    pub sub_b: BigInt,
}

impl RowSubsums {
    pub fn of(row: &Row) -> Self {
        let (sub_a, sub_b) = type_subsums(row);
        RowSubsums {
            n: row.n(),
            len: row.len(),
            sub_a,
            sub_b,
        }
    }
}

/// Checks that the subsums of `later` follow from those of `earlier` through
/// the influence table of `mosaic`. `later` must sit exactly one step below.
pub fn check_subsum_recurrences(
    influence: &InfluenceCoefficients,
    earlier: &RowSubsums,
    later: &RowSubsums,
) -> Result<CheckOutcome> {
    if later.n != earlier.n + influence.step {
        return Err(Error::NonContiguousRows {
            expected: earlier.n + influence.step,
            found: later.n,
        });
    }
    if earlier.len.is_multiple_of(2) || later.len.is_multiple_of(2) {
        return Ok(CheckOutcome::Skipped("even row length"));
    }
    let predicted = influence.apply(&earlier.sub_a, &earlier.sub_b);
    Ok(CheckOutcome::compare(
        Pair(predicted),
        Pair((later.sub_a.clone(), later.sub_b.clone())),
    ))
}

#[derive(PartialEq)]
struct Pair((BigInt, BigInt));

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0 .0, self.0 .1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NegBOutcome {
    Checked(CheckOutcome),
    /// Odd `q`: recorded, never a failure.
    Observed { held: bool },
}

/// `s̃_n = -s̃_n^(B)` for `n >= 1`: asserted for even `q`, observed for odd.
pub fn check_alt_neg_b(mosaic: Mosaic, row: &Row) -> NegBOutcome {
    if row.n() == 0 {
        return NegBOutcome::Checked(CheckOutcome::Skipped("row 0"));
    }
    let alt = alt_sum_direct(row);
    let neg_b = -type_subsums(row).1;
    match mosaic.parity() {
        Parity::Even => NegBOutcome::Checked(CheckOutcome::compare(alt, neg_b)),
        Parity::Odd => NegBOutcome::Observed { held: alt == neg_b },
    }
}

/// Ascendant links and the value rule of `row` against `previous`.
pub fn check_structure(previous: &Row, row: &Row) -> CheckOutcome {
    let mut last_link = None;
    for (k, node) in row.nodes().iter().enumerate() {
        let links = node.ascendants();
        let arity_ok = match node.kind() {
            NodeKind::TypeA => links.len() == 2,
            NodeKind::TypeB | NodeKind::Winger => links.len() == 1,
            NodeKind::Base => false,
        };
        if !arity_ok {
            return CheckOutcome::Fail {
                expected: format!("valid ascendant count at k={k}"),
                actual: format!("{:?} with {} links", node.kind(), links.len()),
            };
        }
        if links.iter().any(|&i| i >= previous.len()) {
            return CheckOutcome::Fail {
                expected: format!("links of k={k} below {}", previous.len()),
                actual: format!("{links:?}"),
            };
        }
        if links.windows(2).any(|w| w[0] >= w[1]) || last_link.is_some_and(|l| links[0] < l) {
            return CheckOutcome::Fail {
                expected: format!("non-decreasing links at k={k}"),
                actual: format!("{links:?}"),
            };
        }
        last_link = links.last().copied();
        let from_links: BigUint = links.iter().map(|&i| previous.nodes()[i].value()).sum();
        if &from_links != node.value() {
            return CheckOutcome::Fail {
                expected: from_links.to_string(),
                actual: node.value().to_string(),
            };
        }
        if node.kind() == NodeKind::Winger && !(k == 0 || k == row.len() - 1) {
            return CheckOutcome::Fail {
                expected: "wingers only at the ends".into(),
                actual: format!("winger at k={k}"),
            };
        }
    }
    let wingers_ok = row.nodes().first().map(|n| n.kind()) == Some(NodeKind::Winger)
        && row.nodes().last().map(|n| n.kind()) == Some(NodeKind::Winger)
        && row.nodes()[0].value() == &BigUint::from(1u8);
    if !wingers_ok {
        return CheckOutcome::Fail {
            expected: "winger of value 1 at both ends".into(),
            actual: format!("row {}", row.n()),
        };
    }
    CheckOutcome::Pass
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// Row length, row sum, palindromes and the construction rule.
    Rows,
    /// Direct, closed-form and recurrence alternating sums agree.
    Sums,
    /// Decomposition, subsum recurrences and `s̃ = -s̃^(B)`.
    Subsums,
    /// Reduction of the subsum system against the merged recurrence.
    Lemma,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Rows, Suite::Sums, Suite::Subsums, Suite::Lemma];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rows => "rows",
            Suite::Sums => "sums",
            Suite::Subsums => "subsums",
            Suite::Lemma => "lemma",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteSelection(Vec<Suite>);

impl SuiteSelection {
    pub fn all() -> Self {
        SuiteSelection(Suite::ALL.to_vec())
    }

    pub fn only(suite: Suite) -> Self {
        SuiteSelection(vec![suite])
    }

    pub fn contains(&self, suite: Suite) -> bool {
        self.0.contains(&suite)
    }

    pub fn suites(&self) -> &[Suite] {
        &self.0
    }
}

impl Default for SuiteSelection {
    fn default() -> Self {
        SuiteSelection::all()
    }
}

impl FromStr for SuiteSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(SuiteSelection::all()),
            _ => Suite::ALL
                .into_iter()
                .find(|suite| suite.name() == s)
                .map(SuiteSelection::only)
                .ok_or_else(|| Error::UnknownSuite(s.to_owned())),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SuiteTally {
    pub passed: usize,
    pub skipped: usize,
    pub failed: usize,
    pub observed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub identity: String,
    pub n: usize,
    pub expected: String,
    pub actual: String,
}

/// Outcome of a check made in observe-only mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation {
    pub identity: String,
    pub n: usize,
    pub held: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportEntry {
    pub n: usize,
    pub s: u64,
    pub s_hat: BigInt,
    pub alt_direct: BigInt,
    pub alt_closed: BigInt,
    pub sub_a: BigInt,
    pub sub_b: BigInt,
}

/// Where a build stopped because of the cell cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub row: usize,
    pub row_cells: u64,
    pub total_cells: u64,
    pub cap: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumsReport {
    pub q: u32,
    pub entries: Vec<ReportEntry>,
    pub failures: Vec<Failure>,
    pub tallies: BTreeMap<Suite, SuiteTally>,
    pub observations: Vec<Observation>,
    pub truncated: Option<Truncation>,
}

impl SumsReport {
    pub fn empty(q: u32) -> Self {
        SumsReport {
            q,
            entries: Vec::new(),
            failures: Vec::new(),
            tallies: BTreeMap::new(),
            observations: Vec::new(),
            truncated: None,
        }
    }

    /// No identity failed and the whole range was covered.
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty() && self.truncated.is_none()
    }

    pub fn tally(&self, suite: Suite) -> SuiteTally {
        self.tallies.get(&suite).copied().unwrap_or_default()
    }
}

struct Recorder<'a> {
    report: &'a mut SumsReport,
    suites: &'a SuiteSelection,
}

impl Recorder<'_> {
    fn record(&mut self, suite: Suite, identity: &str, n: usize, outcome: CheckOutcome) {
        if !self.suites.contains(suite) {
            return;
        }
        let tally = self.report.tallies.entry(suite).or_default();
        match outcome {
            CheckOutcome::Pass => tally.passed += 1,
            CheckOutcome::Skipped(_) => tally.skipped += 1,
            CheckOutcome::Fail { expected, actual } => {
                tally.failed += 1;
                self.report.failures.push(Failure {
                    identity: identity.to_owned(),
                    n,
                    expected,
                    actual,
                });
            }
        }
    }

    fn observe(&mut self, suite: Suite, identity: &str, n: usize, held: bool) {
        if !self.suites.contains(suite) {
            return;
        }
        self.report.tallies.entry(suite).or_default().observed += 1;
        self.report.observations.push(Observation {
            identity: identity.to_owned(),
            n,
            held,
        });
    }
}

/// Streams rows `0..=n_max` once and runs the selected suites on them.
///
/// A cap violation ends the stream early; everything checked up to that
/// point stays in the report and `truncated` names the offending row.
pub fn verify_range(mosaic: Mosaic, n_max: usize, suites: &SuiteSelection, cap: CellCap) -> SumsReport {
    let mut report = SumsReport::empty(mosaic.q());
    let influence = sequences::influence_coefficients(mosaic).ok();
    let mut history: VecDeque<RowSubsums> = VecDeque::new();
    let mut stream = RowStream::new(mosaic, cap);
    // s_n and ŝ_n for n >= 1, advanced in step with the stream
    let mut counts = sequences::row_count_recurrence(mosaic).terms();
    let mut sums = sequences::row_sum_recurrence(mosaic).terms();

    {
        let mut recorder = Recorder {
            report: &mut report,
            suites,
        };
        if let Some(influence) = &influence {
            check_reduction(mosaic, influence, &mut recorder);
        }
    }

    loop {
        let row = stream.current();
        let n = row.n();
        let subsums = RowSubsums::of(row);
        let alt_direct = alt_sum_direct(row);
        let alt_closed = sequences::alt_sum_closed(mosaic, n);
        let s_hat = BigInt::from(row.sum());

        let mut recorder = Recorder {
            report: &mut report,
            suites,
        };

        let (expected_len, expected_sum) = if n == 0 {
            (sequences::row_count(mosaic, 0), sequences::row_sum(mosaic, 0))
        } else {
            (counts.next().expect("unbounded"), sums.next().expect("unbounded"))
        };
        recorder.record(Suite::Rows, "row length", n, CheckOutcome::compare(expected_len, row.len().into()));
        recorder.record(Suite::Rows, "row sum", n, CheckOutcome::compare(expected_sum, s_hat.clone()));
        recorder.record(
            Suite::Rows,
            "value palindrome",
            n,
            CheckOutcome::compare(true, row.is_value_palindrome()),
        );
        recorder.record(
            Suite::Rows,
            "kind palindrome",
            n,
            CheckOutcome::compare(true, row.is_kind_palindrome()),
        );
        if let Some(previous) = stream.previous() {
            recorder.record(Suite::Rows, "construction rule", n, check_structure(previous, row));
        }

        recorder.record(
            Suite::Sums,
            "closed form",
            n,
            CheckOutcome::compare(alt_closed.clone(), alt_direct.clone()),
        );
        recorder.record(
            Suite::Sums,
            "merged recurrence",
            n,
            CheckOutcome::compare(sequences::alt_sum_via_recurrence(mosaic, n), alt_direct.clone()),
        );

        recorder.record(Suite::Subsums, "decomposition", n, check_decomposition(row));
        match check_alt_neg_b(mosaic, row) {
            NegBOutcome::Checked(outcome) => recorder.record(Suite::Subsums, "alt = -subB", n, outcome),
            NegBOutcome::Observed { held } => recorder.observe(Suite::Subsums, "alt = -subB", n, held),
        }
        if let Some(influence) = &influence {
            if let Some(earlier) = history.iter().find(|h| h.n + influence.step == n) {
                let outcome = check_subsum_recurrences(influence, earlier, &subsums)
                    .expect("history entry sits one step above");
                recorder.record(Suite::Subsums, "subsum recurrence", n, outcome);
            }
            check_reduced_subsums(influence, &history, &subsums, &mut recorder);
        }

        report.entries.push(ReportEntry {
            n,
            s: row.len() as u64,
            s_hat,
            alt_direct,
            alt_closed,
            sub_a: subsums.sub_a.clone(),
            sub_b: subsums.sub_b.clone(),
        });
        history.push_back(subsums);
        if history.len() > 9 {
            history.pop_front();
        }

        if n >= n_max {
            break;
        }
        if let Err(Error::CapExceeded {
            row,
            row_cells,
            total_cells,
            cap,
        }) = stream.advance()
        {
            report.truncated = Some(Truncation {
                row,
                row_cells,
                total_cells,
                cap,
            });
            break;
        }
    }
    report
}

/// The reduced subsum system must be the merged alternating-sum recurrence.
fn check_reduction(mosaic: Mosaic, influence: &InfluenceCoefficients, recorder: &mut Recorder<'_>) {
    let outcome = match influence.as_coupled_system().reduce() {
        Ok(reduced) => {
            let merged = match mosaic.parity() {
                Parity::Even => sequences::even_alt_recurrence(mosaic),
                Parity::Odd => sequences::odd_alt_recurrences(mosaic).0,
            };
            CheckOutcome::compare(merged.coefficients().clone(), reduced)
        }
        Err(err) => CheckOutcome::Fail {
            expected: "reducible system".into(),
            actual: err.to_string(),
        },
    };
    recorder.record(Suite::Lemma, "reduced coefficients", 0, outcome);
}

/// Subsums sampled every `step` rows obey the reduced ternary recurrence
/// whenever all four rows have odd length.
fn check_reduced_subsums(
    influence: &InfluenceCoefficients,
    history: &VecDeque<RowSubsums>,
    latest: &RowSubsums,
    recorder: &mut Recorder<'_>,
) {
    let step = influence.step;
    let Some(first) = latest.n.checked_sub(3 * step) else {
        return;
    };
    let window: Vec<&RowSubsums> = (0..3)
        .filter_map(|i| history.iter().find(|h| h.n == first + i * step))
        .chain(std::iter::once(latest))
        .collect();
    if window.len() < 4 {
        return;
    }
    if window.iter().any(|h| h.len % 2 == 0) {
        recorder.record(Suite::Lemma, "reduced subsum recurrence", latest.n, CheckOutcome::Skipped("even row length"));
        return;
    }
    let reduced = influence.as_coupled_system().reduce().expect("checked by caller");
    let residual_a = reduced.residual([&window[0].sub_a, &window[1].sub_a, &window[2].sub_a, &window[3].sub_a]);
    let residual_b = reduced.residual([&window[0].sub_b, &window[1].sub_b, &window[2].sub_b, &window[3].sub_b]);
    recorder.record(
        Suite::Lemma,
        "reduced subsum recurrence",
        latest.n,
        CheckOutcome::compare(Pair((BigInt::zero(), BigInt::zero())), Pair((residual_a, residual_b))),
    );
}

/// Largest `n` with `s_n <= limit`, scanning upward from row 0.
pub fn max_row_within(mosaic: Mosaic, limit: u64) -> usize {
    let limit = BigInt::from(limit);
    // row 0 always fits; s_n is increasing from row 1 on
    sequences::row_count_recurrence(mosaic)
        .terms()
        .take_while(|s| *s <= limit)
        .count()
}

/// Total cells in rows `0..=n_max`, or `None` past `u64`.
pub fn projected_cells(mosaic: Mosaic, n_max: usize) -> Option<u64> {
    sequences::row_count_recurrence(mosaic)
        .terms()
        .take(n_max)
        .map(|s| s.to_u64())
        .try_fold(1u64, |acc, s| acc.checked_add(s?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::collect_rows;

    fn q(q: u32) -> Mosaic {
        Mosaic::new(q).unwrap()
    }

    fn rows(k: u32, n_max: usize) -> Vec<Row> {
        collect_rows(q(k), n_max, CellCap::default()).unwrap()
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn direct_alternating_sums() {
        let q6 = rows(6, 4);
        assert_eq!(alt_sum_direct(&q6[4]), int(4));
        assert_eq!(alt_sum_direct(&q6[0]), int(1));
        for row in rows(7, 6).iter().filter(|r| r.len() % 2 == 0) {
            assert_eq!(alt_sum_direct(row), int(0));
        }
    }

    #[test]
    fn subsums() {
        for k in 4..10 {
            assert_eq!(type_subsums(&rows(k, 2)[2]), (int(-2), int(0)));
        }
        assert_eq!(type_subsums(&rows(7, 3)[3]), (int(-6), int(2)));
        for k in (4..14).step_by(2) {
            let k64 = i64::from(k);
            assert_eq!(type_subsums(&rows(k, 4)[4]), (int(4 * k64 - 18), int(-2 * (k64 - 4))));
        }
    }

    #[test]
    fn decomposition() {
        assert_eq!(check_decomposition(&rows(6, 4)[4]), CheckOutcome::Pass);
        assert_eq!(check_decomposition(&rows(5, 3)[3]), CheckOutcome::Pass);
        assert!(check_decomposition(&rows(6, 3)[3]).is_skipped());
        assert!(check_decomposition(&rows(6, 0)[0]).is_skipped());
    }

    #[test]
    fn subsum_recurrence_examples() {
        let q6 = influence_table(6);
        let r = rows(6, 4);
        let out = check_subsum_recurrences(&q6, &RowSubsums::of(&r[2]), &RowSubsums::of(&r[4])).unwrap();
        assert_eq!(out, CheckOutcome::Pass);
        assert_eq!(q6.apply(&int(-2), &int(0)), (int(6), int(-4)));

        let q7 = influence_table(7);
        let r = rows(7, 6);
        let of = |n: usize| RowSubsums::of(&r[n]);
        assert_eq!(check_subsum_recurrences(&q7, &of(2), &of(5)).unwrap(), CheckOutcome::Pass);
        assert_eq!(check_subsum_recurrences(&q7, &of(3), &of(6)).unwrap(), CheckOutcome::Pass);
        assert_eq!((of(5).sub_a, of(5).sub_b), (int(8 * 7 - 38), int(-4 * 7 + 18)));
        assert_eq!((of(6).sub_a, of(6).sub_b), (int(16 * 7 - 78), int(-8 * 7 + 38)));
        // row 4 has even length
        assert!(check_subsum_recurrences(&q7, &of(1), &of(4)).unwrap().is_skipped());
        assert!(check_subsum_recurrences(&q7, &of(2), &of(4)).is_err());
    }

    #[test]
    fn failing_recurrence_reports_both_pairs() {
        let q6 = influence_table(6);
        let r = rows(6, 4);
        let mut tampered = RowSubsums::of(&r[4]);
        tampered.sub_b += 1;
        let out = check_subsum_recurrences(&q6, &RowSubsums::of(&r[2]), &tampered).unwrap();
        assert_eq!(
            out,
            CheckOutcome::Fail {
                expected: "(6, -4)".into(),
                actual: "(6, -3)".into()
            }
        );
    }

    fn influence_table(k: u32) -> InfluenceCoefficients {
        sequences::influence_coefficients(q(k)).unwrap()
    }

    #[test]
    fn alt_equals_neg_b() {
        let r = rows(6, 5);
        assert_eq!(check_alt_neg_b(q(6), &r[4]), NegBOutcome::Checked(CheckOutcome::Pass));
        assert_eq!(check_alt_neg_b(q(6), &r[5]), NegBOutcome::Checked(CheckOutcome::Pass));
        let r = rows(7, 5);
        assert_eq!(check_alt_neg_b(q(7), &r[5]), NegBOutcome::Observed { held: true });
        assert_eq!(alt_sum_direct(&r[5]), int(10));
    }

    #[test]
    fn structure_check_catches_bad_links() {
        let r = rows(6, 3);
        assert_eq!(check_structure(&r[2], &r[3]), CheckOutcome::Pass);
        // row 3 against the wrong predecessor
        assert!(!check_structure(&r[1], &r[3]).is_pass());
    }

    #[test]
    fn verify_small_ranges() {
        let report = verify_range(q(5), 12, &SuiteSelection::all(), CellCap::default());
        assert!(report.is_clean(), "{:?}", report.failures);
        assert_eq!(report.entries.len(), 13);
        for suite in Suite::ALL {
            assert!(report.tally(suite).passed > 0, "{suite}");
        }

        let report = verify_range(q(4), 15, &SuiteSelection::only(Suite::Sums), CellCap::default());
        assert!(report.is_clean());
        assert!(report.entries[1..].iter().all(|e| e.alt_direct.is_zero()));
        assert_eq!(report.tally(Suite::Rows), SuiteTally::default());

        let report = verify_range(q(6), 0, &SuiteSelection::all(), CellCap::default());
        assert_eq!(
            report.entries,
            [ReportEntry {
                n: 0,
                s: 1,
                s_hat: int(1),
                alt_direct: int(1),
                alt_closed: int(1),
                sub_a: int(0),
                sub_b: int(0),
            }]
        );
    }

    #[test]
    fn verify_truncates_at_cap() {
        let report = verify_range(q(6), 10, &SuiteSelection::all(), CellCap::new(100).unwrap());
        assert_eq!(report.entries.len(), 6);
        assert!(report.failures.is_empty());
        assert!(!report.is_clean());
        assert_eq!(report.truncated.as_ref().map(|t| t.row), Some(6));
    }

    #[test]
    fn verify_is_deterministic() {
        let a = verify_range(q(9), 6, &SuiteSelection::all(), CellCap::default());
        let b = verify_range(q(9), 6, &SuiteSelection::all(), CellCap::default());
        assert_eq!(a, b);
    }

    #[test]
    fn suite_tokens() {
        assert_eq!("all".parse::<SuiteSelection>().unwrap(), SuiteSelection::all());
        assert_eq!("lemma".parse::<SuiteSelection>().unwrap(), SuiteSelection::only(Suite::Lemma));
        assert!("everything".parse::<SuiteSelection>().is_err());
    }

    #[test]
    fn range_helpers() {
        assert_eq!(max_row_within(q(6), 58), 5);
        assert_eq!(max_row_within(q(6), 57), 4);
        assert_eq!(projected_cells(q(6), 5), Some(87));
    }
}
