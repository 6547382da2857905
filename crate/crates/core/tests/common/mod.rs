//! Naive reference implementations used to cross-check the library.
#![allow(dead_code)]

use mnl_core::graph::OrderedGraph;
use mnl_core::pattern::Pattern01;
use mnl_core::sequence::Sequence;
use num_bigint::BigUint;
use proptest::prelude::*;

/// All increasing `k`-subsets of `1..=n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..=n {
            cur.push(s);
            go(s + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Tries every choice of rows and columns of `host`.
pub fn brute_contains(host: &Pattern01, p: &Pattern01) -> bool {
    if p.num_rows() > host.num_rows() || p.num_cols() > host.num_cols() {
        return false;
    }
    let row_sets = subsets(host.num_rows(), p.num_rows());
    let col_sets = subsets(host.num_cols(), p.num_cols());
    row_sets.iter().any(|rows| {
        col_sets.iter().any(|cols| {
            p.ones()
                .iter()
                .all(|&(r, c)| host.get(rows[r - 1], cols[c - 1]))
        })
    })
}

/// Maximum ones over all `n x n` matrices avoiding `p`.
pub fn brute_ex(n: usize, p: &Pattern01) -> u64 {
    let cells = n * n;
    let mut best = 0;
    for bits in 0u64..(1 << cells) {
        let ones = bits.count_ones() as u64;
        if ones <= best {
            continue;
        }
        let rows: Vec<u64> = (0..n).map(|i| (bits >> (i * n)) & ((1 << n) - 1)).collect();
        let m = Pattern01::from_row_masks(n, rows).unwrap();
        if !brute_contains(&m, p) {
            best = ones;
        }
    }
    best
}

/// Tries every set of positions of `u` and checks that the letters
/// correspond one-to-one with those of `v`.
pub fn brute_seq_contains(u: &[u32], v: &[u32]) -> bool {
    if v.len() > u.len() {
        return false;
    }
    subsets(u.len(), v.len()).iter().any(|pos| {
        let mut fwd = std::collections::HashMap::new();
        let mut back = std::collections::HashMap::new();
        pos.iter().zip(v).all(|(&p, &b)| {
            let a = u[p - 1];
            *fwd.entry(b).or_insert(a) == a && *back.entry(a).or_insert(b) == b
        })
    })
}

/// Longest word over `1..=n` avoiding `u` in which every `r` consecutive
/// letters are distinct. Words are extended letter by letter until they
/// contain `u`, which is final because containment survives extension.
pub fn brute_seq_ex(u: &[u32], n: u32) -> usize {
    let r = {
        let mut s = u.to_vec();
        s.sort();
        s.dedup();
        s.len()
    };
    fn go(word: &mut Vec<u32>, u: &[u32], n: u32, r: usize, best: &mut usize) {
        *best = (*best).max(word.len());
        for a in 1..=n {
            let start = word.len().saturating_sub(r - 1);
            if word[start..].contains(&a) {
                continue;
            }
            word.push(a);
            if !brute_seq_contains(word, u) {
                go(word, u, n, r, best);
            }
            word.pop();
        }
    }
    let mut best = 0;
    go(&mut Vec::new(), u, n, r, &mut best);
    best
}

/// Tries every increasing map from the vertices of `g` into `h`.
pub fn brute_og_contains(h: &OrderedGraph, g: &OrderedGraph) -> bool {
    if g.num_vertices() > h.num_vertices() {
        return false;
    }
    subsets(h.num_vertices(), g.num_vertices()).iter().any(|img| {
        g.edges()
            .iter()
            .all(|&(a, b)| h.has_edge(img[a - 1], img[b - 1]))
    })
}

/// Maximum edges over all subsets of the edges of `K_n` avoiding `g`.
pub fn brute_og_ex(n: usize, g: &OrderedGraph) -> u64 {
    let all: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect();
    let mut best = 0;
    for bits in 0u64..(1 << all.len()) {
        let count = bits.count_ones() as u64;
        if count <= best {
            continue;
        }
        let edges = all
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &e)| e);
        let h = OrderedGraph::new(n, edges).unwrap();
        if !brute_og_contains(&h, g) {
            best = count;
        }
    }
    best
}

/// Fewest intervals partitioning `1..=n` with no edge inside an interval,
/// over every set of cut points.
pub fn brute_interval_chromatic(g: &OrderedGraph) -> usize {
    let n = g.num_vertices();
    if n == 0 {
        return 0;
    }
    let mut best = n;
    for cuts in 0u32..(1 << (n - 1)) {
        let mut start = 1;
        let mut ok = true;
        for v in 1..=n {
            let ends = v == n || cuts >> (v - 1) & 1 == 1;
            if ends {
                if g.edges().iter().any(|&(a, b)| a >= start && b <= v) {
                    ok = false;
                    break;
                }
                start = v + 1;
            }
        }
        if ok {
            best = best.min(cuts.count_ones() as usize + 1);
        }
    }
    best
}

fn power(base: u64, exp: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * i)
}

/// The matrix counting bound summed term by term.
pub fn naive_matrix_bound(k: u64) -> BigUint {
    let lo = (k + 2).div_ceil(4);
    let mut total = BigUint::from(0u32);
    for i in lo..=4 * k - 2 {
        total += (power(i, k) - power(i - 1, k)) * power(k, i - 1);
    }
    total
}

/// The sequence counting bound summed term by term.
pub fn naive_seq_bound(k: u64, cap: u64) -> BigUint {
    let mut total = BigUint::from(0u32);
    for i in 1..=cap {
        total += BigUint::from(2 * k) * power(2 * k - 2, i - 1);
    }
    total
}

/// The ordered-graph counting bound summed term by term.
pub fn naive_og_bound(k: u64) -> BigUint {
    let lo = (k + 2).div_ceil(4);
    let mut total = BigUint::from(0u32);
    for i in lo..=4 * k - 2 {
        let binom = factorial(k + i) / (factorial(k) * factorial(i));
        total += binom * (power(i, k) - power(i - 1, k)) * power(k, i - 1);
    }
    total
}

pub fn pattern_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Pattern01> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(0u64..(1 << c), r)
            .prop_map(move |rows| Pattern01::from_row_masks(c, rows).unwrap())
    })
}

/// Patterns with at least one one.
pub fn nonzero_pattern(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Pattern01> {
    pattern_strategy(max_rows, max_cols).prop_filter("needs a one", |p| p.has_ones())
}

pub fn graph_strategy(max_vertices: usize) -> impl Strategy<Value = OrderedGraph> {
    (1..=max_vertices).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b)));
            let edges = all.zip(bits).filter(|(_, keep)| *keep).map(|(e, _)| e);
            OrderedGraph::new(n, edges).unwrap()
        })
    })
}

pub fn word_strategy(max_symbols: u32, max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=max_symbols, 1..=max_len)
}

pub fn seq(letters: &[u32]) -> Sequence {
    Sequence::new(letters.iter().copied()).unwrap()
}

pub fn pat(s: &str) -> Pattern01 {
    s.parse().unwrap()
}

pub fn og(s: &str) -> OrderedGraph {
    s.parse().unwrap()
}

/// Patterns used across the regression tests: the seven two-row
/// minimally non-linear matrices and a few small others.
pub fn matrix_suite() -> Vec<Pattern01> {
    [
        "11;11", "101;011", "011;101", "1010;0101", "101;110", "110;101", "0101;1010",
        "11", "111", "1;1", "10;01", "11;10", "100;011",
    ]
    .iter()
    .map(|s| pat(s))
    .collect()
}

/// Small ordered graphs used across the regression tests.
pub fn graph_suite() -> Vec<OrderedGraph> {
    [
        "2:1-2",
        "3:1-2,2-3",
        "3:1-3,2-3",
        "3:1-2,1-3",
        "3:1-3",
        "4:1-3,2-4",
        "4:1-4,2-3",
        "4:1-2,3-4",
        "4:1-3,1-4,2-3,2-4",
        "3:1-2,1-3,2-3",
    ]
    .iter()
    .map(|s| og(s))
    .collect()
}
