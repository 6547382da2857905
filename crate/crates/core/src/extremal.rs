//! Exact extremal values `ex(n, P)` for forbidden 0-1 matrices.
//!
//! [`ex_exhaustive`] enumerates every `n x n` matrix and is only meant as
//! an oracle for tiny `n`. [`ex_branch_bound`] fills the matrix column by
//! column and prunes with two upper bounds on what the remaining columns can
//! still hold:
//!
//! * per-row caps: how many more ones a single row can take in the remaining
//!   columns (all other new entries zero) before a copy appears;
//! * the exact extremal value of the `n x r` rectangle formed by the `r`
//!   remaining columns, computed beforehand by the same search.
//!
//! Records are honest about exactness: when the node budget runs out the
//! best value found is returned with `exact = false`.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{canonical_key, Embedder, Pattern01};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Largest `n` handled by the branch-and-bound engine.
pub const MAX_BRANCH_BOUND_N: u32 = 16;

/// Largest `n` handled by the exhaustive oracle.
pub const MAX_EXHAUSTIVE_N: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Matrix,
    Sequence,
    OrderedGraph,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Matrix => "matrix",
            Kind::Sequence => "sequence",
            Kind::OrderedGraph => "ordered-graph",
        }
    }
}

/// One extremal value. Serialized with the field `key` for the pattern key;
/// `pattern_key` is accepted when reading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExRecord {
    #[serde(rename = "key", alias = "pattern_key")]
    pub pattern_key: String,
    pub kind: Kind,
    pub n: u32,
    pub value: u64,
    pub exact: bool,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    ApparentlyLinear,
    SuperlinearSuspect,
    Inconclusive,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::ApparentlyLinear => "apparently-linear",
            Classification::SuperlinearSuspect => "superlinear-suspect",
            Classification::Inconclusive => "inconclusive",
        }
    }
}

/// Values of `ex(n, P)` for `n = 1..=n_max` with a growth heuristic.
///
/// The heuristic cannot separate `Θ(n α(n))` from `Θ(n)`: at sizes where
/// exact values are computable the inverse Ackermann factor is constant, so
/// such patterns may well be reported as apparently linear.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub pattern_key: String,
    pub values: Vec<(u32, u64)>,
    pub increments: Vec<i64>,
    pub exact: bool,
    pub classification: Classification,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub node_budget: u64,
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            threads: 1,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        SearchConfig {
            node_budget,
            ..Self::default()
        }
    }
}

/// Node counter shared by all workers of one search.
#[derive(Debug)]
pub struct SearchBudget {
    limit: u64,
    used: AtomicU64,
    exhausted: AtomicBool,
}

impl SearchBudget {
    pub fn new(limit: u64) -> Self {
        SearchBudget {
            limit,
            used: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    /// Accounts for one node; false once the budget is spent.
    #[inline]
    pub fn tick(&self) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let used = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        if used > self.limit {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    #[inline]
    pub fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.limit)
    }
}

fn require_ones(p: &Pattern01) -> Result<()> {
    if p.has_ones() {
        Ok(())
    } else {
        Err(Error::InvalidInput(
            "extremal functions are undefined for an all-zero pattern".into(),
        ))
    }
}

/// `ex(n, P)` by enumerating all `2^(n^2)` matrices. Only for `n <= 4`.
pub fn ex_exhaustive(n: u32, p: &Pattern01) -> Result<u64> {
    require_ones(p)?;
    if n == 0 || n > MAX_EXHAUSTIVE_N {
        return Err(Error::OutOfRange(format!(
            "exhaustive oracle supports 1 <= n <= {MAX_EXHAUSTIVE_N}, got {n}"
        )));
    }
    let n = n as usize;
    let embedder = Embedder::new(p);
    let row_mask = (1u64 << n) - 1;
    let mut best = 0;
    let mut rows = vec![0u64; n];
    let mut cols = vec![0u64; n];
    for bits in 0u64..(1u64 << (n * n)) {
        let ones = bits.count_ones() as u64;
        if ones <= best {
            continue;
        }
        for (i, row) in rows.iter_mut().enumerate() {
            *row = (bits >> (i * n)) & row_mask;
        }
        for (j, col) in cols.iter_mut().enumerate() {
            *col = rows
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &r)| acc | ((r >> j & 1) << i));
        }
        if !embedder.embeds(&rows, &cols, false) {
            best = ones;
        }
    }
    Ok(best)
}

/// `ex(n, P)` by branch-and-bound with the default single-threaded config.
pub fn ex_branch_bound(n: u32, p: &Pattern01, node_budget: u64) -> Result<ExRecord> {
    ex_branch_bound_with(n, p, &SearchConfig::with_budget(node_budget))
}

pub fn ex_branch_bound_with(n: u32, p: &Pattern01, config: &SearchConfig) -> Result<ExRecord> {
    require_ones(p)?;
    if n == 0 || n > MAX_BRANCH_BOUND_N {
        return Err(Error::OutOfRange(format!(
            "branch-and-bound supports 1 <= n <= {MAX_BRANCH_BOUND_N}, got {n}"
        )));
    }
    let start = Instant::now();
    let (value, exact, nodes) = if config.threads > 1 {
        let (value, exact, nodes) = run_rectangles(n as usize, p, config.node_budget, config.threads);
        if exact {
            (value, exact, nodes)
        } else {
            // A parallel run that hits the budget depends on scheduling;
            // inexact answers always come from the sequential search.
            run_rectangles(n as usize, p, config.node_budget, 1)
        }
    } else {
        run_rectangles(n as usize, p, config.node_budget, 1)
    };
    Ok(ExRecord {
        pattern_key: canonical_key(p),
        kind: Kind::Matrix,
        n,
        value,
        exact,
        nodes_explored: nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Solves `n x r` for `r = 1..=n`, each rectangle seeding the bounds of the
/// next.
fn run_rectangles(n: usize, p: &Pattern01, node_budget: u64, threads: usize) -> (u64, bool, u64) {
    let budget = SearchBudget::new(node_budget);
    let embedder = Embedder::new(p);
    let mut masks: Vec<u64> = (0..(1u64 << n)).collect();
    masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));

    // rect[r] bounds the ones an n x r block can hold while avoiding `p`.
    let mut rect: Vec<u64> = vec![0];
    for width in 1..=n {
        let search = MatrixSearch {
            rows: n,
            cols: width,
            embedder: &embedder,
            masks: &masks,
            rect: &rect,
            budget: &budget,
            best: AtomicU64::new(0),
        };
        let value = search.run(threads);
        if budget.exhausted() {
            return (value, false, budget.used());
        }
        rect.push(value);
    }
    (rect[n], true, budget.used())
}

struct MatrixSearch<'a> {
    rows: usize,
    cols: usize,
    embedder: &'a Embedder,
    masks: &'a [u64],
    rect: &'a [u64],
    budget: &'a SearchBudget,
    best: AtomicU64,
}

#[derive(Clone)]
struct Partial {
    host_rows: Vec<u64>,
    host_cols: Vec<u64>,
    ones: u64,
    caps: Vec<usize>,
}

impl Partial {
    fn new(rows: usize, cols: usize) -> Self {
        Partial {
            host_rows: vec![0; rows],
            host_cols: Vec::with_capacity(cols + 1),
            ones: 0,
            caps: vec![cols; rows],
        }
    }

    fn push(&mut self, mask: u64) {
        let c = self.host_cols.len();
        for (i, row) in self.host_rows.iter_mut().enumerate() {
            *row |= (mask >> i & 1) << c;
        }
        self.host_cols.push(mask);
        self.ones += mask.count_ones() as u64;
    }

    fn pop(&mut self) {
        let mask = self.host_cols.pop().expect("pop on empty partial");
        let c = self.host_cols.len();
        for row in self.host_rows.iter_mut() {
            *row &= !(1u64 << c);
        }
        self.ones -= mask.count_ones() as u64;
    }
}

impl MatrixSearch<'_> {
    fn best(&self) -> u64 {
        self.best.load(Ordering::Relaxed)
    }

    /// Upper bound on the ones an `rows x width` block can hold.
    fn block_bound(&self, width: usize) -> u64 {
        let known = self.rect.len() - 1;
        if width <= known {
            self.rect[width]
        } else {
            self.rect[known] + ((width - known) * self.rows) as u64
        }
    }

    fn run(&self, threads: usize) -> u64 {
        if threads <= 1 {
            let mut partial = Partial::new(self.rows, self.cols);
            self.dfs(&mut partial);
        } else {
            let root = Partial::new(self.rows, self.cols);
            // Root children are explored in parallel; each worker owns its
            // partial matrix and shares only the incumbent value.
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("thread pool");
            pool.install(|| {
                self.masks.par_iter().for_each(|&mask| {
                    let mut partial = root.clone();
                    self.child(&mut partial, mask, self.cols);
                });
            });
        }
        self.best()
    }

    /// Pushes `mask` as the next column and recurses if the result avoids
    /// the needle.
    fn child(&self, partial: &mut Partial, mask: u64, remaining: usize) {
        if partial.ones + mask.count_ones() as u64 + self.block_bound(remaining - 1) <= self.best() {
            return;
        }
        partial.push(mask);
        if !self
            .embedder
            .embeds(&partial.host_rows, &partial.host_cols, true)
        {
            let saved = partial.caps.clone();
            self.dfs(partial);
            partial.caps = saved;
        }
        partial.pop();
    }

    fn dfs(&self, partial: &mut Partial) {
        if !self.budget.tick() {
            return;
        }
        let remaining = self.cols - partial.host_cols.len();
        if remaining == 0 {
            self.best.fetch_max(partial.ones, Ordering::Relaxed);
            return;
        }
        let mut cap_sum = 0u64;
        let mut allowed = 0u64;
        for i in 0..self.rows {
            let cap = self.row_cap(partial, i, partial.caps[i].min(remaining));
            partial.caps[i] = cap;
            cap_sum += cap as u64;
            if cap > 0 {
                allowed |= 1 << i;
            }
        }
        let best = self.best();
        if partial.ones + cap_sum.min(self.block_bound(remaining)) <= best {
            return;
        }
        for &mask in self.masks {
            if mask & !allowed != 0 {
                continue;
            }
            // Masks come in decreasing popcount order.
            if partial.ones + mask.count_ones() as u64 + self.block_bound(remaining - 1) <= self.best() {
                break;
            }
            self.child(partial, mask, remaining);
            if self.budget.exhausted() {
                return;
            }
        }
    }

    /// Largest `j <= upper` such that appending `j` columns holding a single
    /// one in row `i` keeps the partial matrix free of the needle.
    fn row_cap(&self, partial: &mut Partial, i: usize, upper: usize) -> usize {
        let single = 1u64 << i;
        let mut j = upper;
        while j > 0 {
            for _ in 0..j {
                partial.push(single);
            }
            let hit = self
                .embedder
                .embeds(&partial.host_rows, &partial.host_cols, true);
            for _ in 0..j {
                partial.pop();
            }
            if !hit {
                return j;
            }
            j -= 1;
        }
        0
    }
}

/// Computes `ex(n, P)` for `n = 1..=n_max` and classifies the growth.
pub fn growth_report(p: &Pattern01, n_max: u32, node_budget: u64) -> Result<GrowthReport> {
    growth_report_with(p, n_max, |n| ex_branch_bound(n, p, node_budget))
}

/// [`growth_report`] with a caller-supplied source of records (for example
/// a cache in front of the search).
pub fn growth_report_with(
    p: &Pattern01,
    n_max: u32,
    mut value_at: impl FnMut(u32) -> Result<ExRecord>,
) -> Result<GrowthReport> {
    require_ones(p)?;
    if n_max < 3 {
        return Err(Error::OutOfRange(format!("n_max must be at least 3, got {n_max}")));
    }
    let mut values = Vec::new();
    let mut exact = true;
    for n in 1..=n_max {
        let rec = value_at(n)?;
        exact &= rec.exact;
        values.push((n, rec.value));
    }
    let increments: Vec<i64> = values
        .windows(2)
        .map(|w| w[1].1 as i64 - w[0].1 as i64)
        .collect();
    let classification = if exact {
        classify(&increments)
    } else {
        Classification::Inconclusive
    };
    Ok(GrowthReport {
        pattern_key: canonical_key(p),
        values,
        increments,
        exact,
        classification,
    })
}

/// Looks at the last three increments (fewer if that is all there is):
/// all equal means apparently linear, strictly increasing means
/// superlinear-suspect.
pub fn classify(increments: &[i64]) -> Classification {
    if increments.len() < 2 {
        return Classification::Inconclusive;
    }
    let tail = &increments[increments.len().saturating_sub(3)..];
    if tail.windows(2).all(|w| w[0] == w[1]) {
        Classification::ApparentlyLinear
    } else if tail.windows(2).all(|w| w[0] < w[1]) {
        Classification::SuperlinearSuspect
    } else {
        Classification::Inconclusive
    }
}
