//! Candidate generation for minimally non-linear patterns.
//!
//! The filters here are necessary conditions only. A report can say that a
//! pattern is `rejected`, a `structural-candidate`, or one of the seven
//! known two-row minimally non-linear matrices; it never decides
//! non-linearity of anything else.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::GrowthReport;
use crate::graph::{
    go_family, og_bipartite_reduce, og_contains, underlying_is_k22, Bipartition, OrderedGraph,
};
use crate::pattern::{contains, reduce_leftmost, scan_letters, Pattern01, MAX_DIM};
use crate::sequence::{blocks, seq_contains, Sequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Exception,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn new(name: &str, status: CheckStatus, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            status,
            detail: detail.into(),
        }
    }

    fn pass_if(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        Self::new(name, status, detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Rejected,
    StructuralCandidate,
    KnownMnl,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Rejected => "rejected",
            Verdict::StructuralCandidate => "structural-candidate",
            Verdict::KnownMnl => "known-mnl",
        }
    }
}

/// Outcome of the filter stack on one subject (a matrix or a bipartite
/// ordered graph).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport<T> {
    pub pattern: T,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthReport>,
}

impl<T> CandidateReport<T> {
    fn from_checks(pattern: T, checks: Vec<Check>, known: bool) -> Self {
        let verdict = if checks.iter().any(|c| c.status == CheckStatus::Fail) {
            Verdict::Rejected
        } else if known {
            Verdict::KnownMnl
        } else {
            Verdict::StructuralCandidate
        };
        CandidateReport {
            pattern,
            checks,
            verdict,
            growth: None,
        }
    }
}

/// A bipartite ordered graph together with its chosen split.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BipartiteGraph {
    pub graph: OrderedGraph,
    pub parts: Bipartition,
}

/// Exact non-negative integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(pub BigUint);

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl Serialize for BigCount {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

fn pat(s: &str) -> Pattern01 {
    s.parse().expect("literal pattern")
}

fn known_list() -> &'static [Pattern01] {
    static KNOWN: OnceLock<Vec<Pattern01>> = OnceLock::new();
    KNOWN.get_or_init(|| {
        let base = [pat("11;11"), pat("101;011"), pat("011;101"), pat("1010;0101")];
        let mut all = base.to_vec();
        all.extend(base[1..].iter().map(Pattern01::reflect_cols));
        all
    })
}

/// The seven two-row minimally non-linear matrices: `[11;11]`,
/// `[101;011]`, `[011;101]`, `[1010;0101]` and the mirror images of the last
/// three under reflection over a vertical line.
pub fn known_mnl_2row() -> BTreeSet<Pattern01> {
    known_list().iter().cloned().collect()
}

/// Matrices exempt from the one-per-column condition after deleting
/// leftmost ones.
fn leftmost_exceptions() -> [Pattern01; 3] {
    [pat("101;011"), pat("011;101"), pat("11;11")]
}

/// Matrices exempt from the `abab`-avoidance condition on the column scan.
fn scan_exceptions() -> [Pattern01; 2] {
    [pat("1010;0101"), pat("0101;1010")]
}

fn min_cols(k: usize) -> usize {
    (k + 2).div_ceil(4)
}

fn max_cols(k: usize) -> usize {
    4 * k - 2
}

/// Runs the matrix filter stack and records every verdict.
pub fn structural_filter(p: &Pattern01) -> CandidateReport<Pattern01> {
    let k = p.num_rows();
    let c = p.num_cols();
    let ones = p.one_count();
    let mut checks = Vec::with_capacity(6);

    let zero_rows: Vec<usize> = (0..k).filter(|&i| p.row_mask(i) == 0).map(|i| i + 1).collect();
    let zero_cols: Vec<usize> = (0..c).filter(|&j| p.col_mask(j) == 0).map(|j| j + 1).collect();
    checks.push(Check::pass_if(
        "no-zero-lines",
        zero_rows.is_empty() && zero_cols.is_empty(),
        if zero_rows.is_empty() && zero_cols.is_empty() {
            "every row and column has a one".to_string()
        } else {
            format!("all-zero rows {zero_rows:?}, all-zero columns {zero_cols:?}")
        },
    ));

    let (lo, hi) = (min_cols(k), max_cols(k));
    checks.push(Check::pass_if(
        "column-range",
        (lo..=hi).contains(&c),
        format!("{c} columns, allowed {lo}..={hi} for {k} rows"),
    ));

    let max_ones = 5 * k - 3;
    checks.push(Check::pass_if(
        "ones-range",
        (k..=max_ones).contains(&ones),
        format!("{ones} ones, allowed {k}..={max_ones}"),
    ));

    checks.push(match reduce_leftmost(p) {
        Err(e) => Check::new("leftmost-reduction", CheckStatus::Fail, e.to_string()),
        Ok(reduced) => {
            let crowded: Vec<usize> = (0..c)
                .filter(|&j| reduced.col_mask(j).count_ones() > 1)
                .map(|j| j + 1)
                .collect();
            if crowded.is_empty() {
                Check::new(
                    "leftmost-reduction",
                    CheckStatus::Pass,
                    "at most one remaining one per column",
                )
            } else if leftmost_exceptions().contains(p) {
                Check::new(
                    "leftmost-reduction",
                    CheckStatus::Exception,
                    format!("columns {crowded:?} keep several ones; named exception"),
                )
            } else {
                Check::new(
                    "leftmost-reduction",
                    CheckStatus::Fail,
                    format!("columns {crowded:?} keep several ones"),
                )
            }
        }
    });

    checks.push(match scan_letters(p) {
        Err(e) => Check::new("column-scan", CheckStatus::Fail, e.to_string()),
        Ok(letters) => {
            let word: String = letters.iter().map(|&r| r.to_string()).collect::<Vec<_>>().join(",");
            let seq = Sequence::new(letters.iter().map(|&r| r as u32)).expect("non-empty");
            let longest = blocks(&seq).max_run();
            let abab = Sequence::new([1, 2, 1, 2]).expect("literal");
            if longest >= 3 {
                Check::new(
                    "column-scan",
                    CheckStatus::Fail,
                    format!("scan {word} has a run of length {longest}"),
                )
            } else if seq_contains(&seq, &abab) {
                if scan_exceptions().contains(p) {
                    Check::new(
                        "column-scan",
                        CheckStatus::Exception,
                        format!("scan {word} contains abab; named exception"),
                    )
                } else {
                    Check::new("column-scan", CheckStatus::Fail, format!("scan {word} contains abab"))
                }
            } else {
                Check::new(
                    "column-scan",
                    CheckStatus::Pass,
                    format!("scan {word} has runs of length <= 2 and avoids abab"),
                )
            }
        }
    });

    let strict: Vec<&Pattern01> = known_list()
        .iter()
        .filter(|q| *q != p && contains(p, q))
        .collect();
    checks.push(Check::pass_if(
        "no-known-strict-subpattern",
        strict.is_empty(),
        if strict.is_empty() {
            "contains none of the seven two-row matrices strictly".to_string()
        } else {
            let names: Vec<String> = strict.iter().map(|q| q.compact()).collect();
            format!("strictly contains {}", names.join(", "))
        },
    ));

    let known = known_list().contains(p);
    CandidateReport::from_checks(p.clone(), checks, known)
}

fn check_range(k: usize, col_min: usize, col_max: usize) -> Result<()> {
    if !(2..=MAX_DIM).contains(&k) {
        return Err(Error::OutOfRange(format!("k must be in 2..={MAX_DIM}, got {k}")));
    }
    let (lo, hi) = (min_cols(k), max_cols(k).min(MAX_DIM));
    if col_min < lo || col_max > hi || col_min > col_max {
        return Err(Error::OutOfRange(format!(
            "column range {col_min}..={col_max} must lie within {lo}..={hi} for k = {k}"
        )));
    }
    Ok(())
}

/// Calls `visit(num_cols, row_masks)` for every matrix built by the
/// leftmost-one construction: each row picks a leftmost-one column, at
/// least one row picks column 1, then every later column receives at most
/// one further one, in a row whose leftmost one lies strictly to the left.
/// A column that is nobody's leftmost one must receive exactly one.
pub fn for_each_generated(
    k: usize,
    col_min: usize,
    col_max: usize,
    mut visit: impl FnMut(usize, &[u64]),
) -> Result<()> {
    check_range(k, col_min, col_max)?;
    for width in col_min..=col_max {
        let mut leftmost = vec![0usize; k];
        loop {
            if leftmost.contains(&0) {
                fill_columns(width, &leftmost, &mut visit);
            }
            // Next leftmost profile in {0..width}^k.
            let mut i = 0;
            while i < k && leftmost[i] + 1 == width {
                leftmost[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
            leftmost[i] += 1;
        }
    }
    Ok(())
}

fn fill_columns(width: usize, leftmost: &[usize], visit: &mut impl FnMut(usize, &[u64])) {
    let k = leftmost.len();
    let mut options: Vec<Vec<Option<usize>>> = Vec::with_capacity(width);
    for j in 1..width {
        let mut opts = Vec::new();
        if leftmost.contains(&j) {
            opts.push(None);
        }
        opts.extend((0..k).filter(|&r| leftmost[r] < j).map(Some));
        options.push(opts);
    }
    let mut rows: Vec<u64> = leftmost.iter().map(|&l| 1u64 << l).collect();
    fn go(
        j: usize,
        options: &[Vec<Option<usize>>],
        rows: &mut [u64],
        width: usize,
        visit: &mut impl FnMut(usize, &[u64]),
    ) {
        if j == options.len() {
            visit(width, rows);
            return;
        }
        let col = j + 1;
        for &opt in &options[j] {
            if let Some(r) = opt {
                rows[r] |= 1 << col;
            }
            go(j + 1, options, rows, width, visit);
            if let Some(r) = opt {
                rows[r] &= !(1 << col);
            }
        }
    }
    go(0, &options, &mut rows, width, visit);
}

/// Matrices fed to the filter stack: the leftmost-one construction plus,
/// for two rows, the three matrices the construction cannot produce
/// (`[11;11]`, `[101;011]`, `[011;101]`). Sorted and duplicate-free.
pub fn generate_raw(k: usize, col_min: usize, col_max: usize) -> Result<Vec<Pattern01>> {
    let mut out = BTreeSet::new();
    for_each_generated(k, col_min, col_max, |width, rows| {
        out.insert(Pattern01::from_row_masks_unchecked(k, width, rows.to_vec()));
    })?;
    if k == 2 {
        out.extend(
            leftmost_exceptions()
                .into_iter()
                .filter(|p| (col_min..=col_max).contains(&p.num_cols())),
        );
    }
    Ok(out.into_iter().collect())
}

/// Runs [`structural_filter`] over [`generate_raw`] and keeps every report
/// that is not rejected, in sorted pattern order.
pub fn enumerate_candidates(
    k: usize,
    col_min: usize,
    col_max: usize,
) -> Result<impl Iterator<Item = CandidateReport<Pattern01>>> {
    let raw = generate_raw(k, col_min, col_max)?;
    let reports: Vec<_> = raw
        .par_iter()
        .map(structural_filter)
        .filter(|r| r.verdict != Verdict::Rejected)
        .collect();
    Ok(reports.into_iter())
}

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

fn binomial(n: usize, k: usize) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * big(n - i) / big(i + 1);
    }
    acc
}

fn leftmost_combinations(i: usize, k: usize) -> BigUint {
    Pow::pow(big(i), k) - Pow::pow(big(i - 1), k)
}

/// Upper bound on the number of minimally non-linear matrices with `k`
/// rows: the sum over widths `i` of `(i^k - (i-1)^k) * k^(i-1)`.
pub fn matrix_count_bound(k: usize) -> Result<BigCount> {
    if k < 2 {
        return Err(Error::InvalidInput("k must be at least 2".into()));
    }
    let mut total = BigUint::zero();
    for i in min_cols(k)..=max_cols(k) {
        total += leftmost_combinations(i, k) * Pow::pow(big(k), i - 1);
    }
    Ok(BigCount(total))
}

/// Upper bound on the number of minimally non-linear sequences over `k`
/// letters with at most `ex_ababa_k` segments.
pub fn seq_count_bound(k: usize, ex_ababa_k: usize) -> Result<BigCount> {
    if k < 2 || ex_ababa_k < 1 {
        return Err(Error::InvalidInput(
            "need k >= 2 and a segment cap of at least 1".into(),
        ));
    }
    let ratio = big(2 * k - 2);
    let mut term = BigUint::one();
    let mut sum = BigUint::zero();
    for _ in 0..ex_ababa_k {
        sum += &term;
        term *= &ratio;
    }
    Ok(BigCount(big(2 * k) * sum))
}

/// Upper bound on the number of minimally non-linear bipartite ordered
/// graphs with `k` vertices in one part: the matrix bound with each term
/// multiplied by the `binom(k + i, k)` interleavings.
pub fn og_count_bound(k: usize) -> Result<BigCount> {
    if k < 2 {
        return Err(Error::InvalidInput("k must be at least 2".into()));
    }
    let mut total = BigUint::zero();
    for i in min_cols(k)..=max_cols(k) {
        total += binomial(k + i, k) * leftmost_combinations(i, k) * Pow::pow(big(k), i - 1);
    }
    Ok(BigCount(total))
}

fn known_graphs() -> &'static BTreeSet<OrderedGraph> {
    static GRAPHS: OnceLock<BTreeSet<OrderedGraph>> = OnceLock::new();
    GRAPHS.get_or_init(|| {
        known_list()
            .iter()
            .flat_map(|p| go_family(p).expect("known patterns have no zero lines"))
            .collect()
    })
}

fn staircase_graphs() -> &'static BTreeSet<OrderedGraph> {
    static GRAPHS: OnceLock<BTreeSet<OrderedGraph>> = OnceLock::new();
    GRAPHS.get_or_init(|| go_family(&pat("101;011")).expect("no zero lines"))
}

/// Runs the bipartite ordered-graph filter stack.
pub fn og_structural_filter(
    g: &OrderedGraph,
    parts: &Bipartition,
) -> Result<CandidateReport<BipartiteGraph>> {
    parts.validate(g)?;
    let (nu, nv) = (parts.part_u.len(), parts.part_v.len());
    let (small, large) = (nu.min(nv), nu.max(nv));
    let edges = g.num_edges();
    let total = g.num_vertices();
    let is_k22 = underlying_is_k22(g);
    let mut checks = Vec::with_capacity(5);

    let limit = (4 * small as i64) - 2;
    checks.push(Check::pass_if(
        "part-ratio",
        large as i64 <= limit,
        format!("parts of sizes {nu} and {nv}; larger part allowed up to {limit}"),
    ));

    let bip_limit = nu + nv - 1;
    checks.push(if edges <= bip_limit {
        Check::new("edge-bound-bipartite", CheckStatus::Pass, format!("{edges} <= {bip_limit} edges"))
    } else if is_k22 {
        Check::new(
            "edge-bound-bipartite",
            CheckStatus::Exception,
            format!("{edges} > {bip_limit} edges; underlying graph is K_2,2"),
        )
    } else {
        Check::new("edge-bound-bipartite", CheckStatus::Fail, format!("{edges} > {bip_limit} edges"))
    });

    let total_limit = (2 * total).saturating_sub(2);
    checks.push(Check::pass_if(
        "edge-bound-total",
        edges <= total_limit,
        format!("{edges} edges, allowed {total_limit} on {total} vertices"),
    ));

    let reduced = og_bipartite_reduce(g, parts)?;
    let crowded: Vec<usize> = parts
        .part_v
        .iter()
        .copied()
        .filter(|&v| reduced.degree(v) > 1)
        .collect();
    checks.push(if crowded.is_empty() {
        Check::new(
            "bipartite-reduction",
            CheckStatus::Pass,
            "every vertex of the second part keeps at most one neighbour",
        )
    } else if is_k22 || staircase_graphs().contains(g) {
        Check::new(
            "bipartite-reduction",
            CheckStatus::Exception,
            format!("vertices {crowded:?} keep several neighbours; named exception"),
        )
    } else {
        Check::new(
            "bipartite-reduction",
            CheckStatus::Fail,
            format!("vertices {crowded:?} keep several neighbours"),
        )
    });

    let strict: Vec<String> = known_graphs()
        .iter()
        .filter(|h| *h != g && og_contains(g, h))
        .map(OrderedGraph::compact)
        .collect();
    checks.push(Check::pass_if(
        "no-known-strict-subgraph",
        strict.is_empty(),
        if strict.is_empty() {
            "contains no realization of the seven two-row matrices strictly".to_string()
        } else {
            format!("strictly contains {}", strict.join(", "))
        },
    ));

    let known = known_graphs().contains(g);
    Ok(CandidateReport::from_checks(
        BipartiteGraph {
            graph: g.clone(),
            parts: parts.clone(),
        },
        checks,
        known,
    ))
}

/// Places the rows of `p` at the vertex slots in `row_slots` and the
/// columns at the remaining slots, both in increasing order.
pub fn interleave(p: &Pattern01, row_slots: &[usize]) -> Result<BipartiteGraph> {
    let n = p.num_rows() + p.num_cols();
    let row_set: BTreeSet<usize> = row_slots.iter().copied().collect();
    if row_set.len() != p.num_rows() || row_set.iter().any(|&s| s == 0 || s > n) {
        return Err(Error::InvalidInput(format!(
            "need {} distinct row slots in 1..={n}",
            p.num_rows()
        )));
    }
    let col_slots: Vec<usize> = (1..=n).filter(|s| !row_set.contains(s)).collect();
    let rows: Vec<usize> = row_set.iter().copied().collect();
    let edges = p.ones().into_iter().map(|(r, c)| {
        let (a, b) = (rows[r - 1], col_slots[c - 1]);
        (a.min(b), a.max(b))
    });
    let graph = OrderedGraph::new(n, edges)?;
    Ok(BipartiteGraph {
        graph,
        parts: Bipartition::new(rows, col_slots),
    })
}

/// Bipartite ordered graphs with `k` vertices in the first part and
/// `col_min..=col_max` in the second: every generated matrix in every
/// interleaving, filtered, non-rejected reports only, sorted.
pub fn enumerate_og_candidates(
    k: usize,
    col_min: usize,
    col_max: usize,
) -> Result<impl Iterator<Item = CandidateReport<BipartiteGraph>>> {
    let raw = generate_raw(k, col_min, col_max)?;
    if raw.iter().any(|p| p.num_rows() + p.num_cols() > crate::graph::MAX_VERTICES) {
        return Err(Error::OutOfRange("graphs would exceed the vertex limit".into()));
    }
    let mut reports: Vec<CandidateReport<BipartiteGraph>> = raw
        .par_iter()
        .flat_map_iter(|p| {
            let n = p.num_rows() + p.num_cols();
            row_slot_sets(n, p.num_rows())
                .into_iter()
                .map(move |slots| interleave(p, &slots).expect("valid slots"))
        })
        .map(|bg| og_structural_filter(&bg.graph, &bg.parts).expect("construction is bipartite"))
        .filter(|r| r.verdict != Verdict::Rejected)
        .collect();
    reports.sort_by(|a, b| a.pattern.cmp(&b.pattern));
    reports.dedup_by(|a, b| a.pattern == b.pattern);
    Ok(reports.into_iter())
}

fn row_slot_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..=(n - (k - cur.len()) + 1) {
            cur.push(s);
            go(s + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(1, n, k, &mut cur, &mut out);
    out
}
