//! Ordered graphs: vertices `1..=n` on a line, order-preserving
//! (non-induced) containment, `ex_<(n, G)`, interval chromatic number and
//! the bipartite constructions used by the structural filters.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::bit_positions;
use crate::error::{Error, Result};
use crate::extremal::{ExRecord, Kind, SearchBudget, SearchConfig};
use crate::pattern::Pattern01;

pub const MAX_VERTICES: usize = 64;

/// Largest `n` for the edge-subset enumeration oracle.
pub const MAX_EXHAUSTIVE_VERTICES: u32 = 6;

/// Largest `n` for the branch-and-bound search.
pub const MAX_SEARCH_VERTICES: u32 = 10;

/// An ordered graph. `adj[i]` is the neighbour bitmask of vertex `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedGraph {
    num_vertices: usize,
    adj: Vec<u64>,
}

/// A split of the vertices into two independent parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    pub part_u: BTreeSet<usize>,
    pub part_v: BTreeSet<usize>,
}

impl Bipartition {
    pub fn new(
        part_u: impl IntoIterator<Item = usize>,
        part_v: impl IntoIterator<Item = usize>,
    ) -> Self {
        Bipartition {
            part_u: part_u.into_iter().collect(),
            part_v: part_v.into_iter().collect(),
        }
    }

    /// `part_u` as given, everything else in `part_v`.
    pub fn from_part_u(g: &OrderedGraph, part_u: impl IntoIterator<Item = usize>) -> Self {
        let part_u: BTreeSet<usize> = part_u.into_iter().collect();
        let part_v = (1..=g.num_vertices)
            .filter(|v| !part_u.contains(v))
            .collect();
        Bipartition { part_u, part_v }
    }

    pub fn validate(&self, g: &OrderedGraph) -> Result<()> {
        if let Some(v) = self.part_u.intersection(&self.part_v).next() {
            return Err(Error::InvalidInput(format!("vertex {v} lies in both parts")));
        }
        for v in 1..=g.num_vertices {
            if !self.part_u.contains(&v) && !self.part_v.contains(&v) {
                return Err(Error::InvalidInput(format!("vertex {v} lies in neither part")));
            }
        }
        if let Some(v) = self
            .part_u
            .iter()
            .chain(&self.part_v)
            .find(|&&v| v == 0 || v > g.num_vertices)
        {
            return Err(Error::InvalidInput(format!("vertex {v} is out of range")));
        }
        for part in [&self.part_u, &self.part_v] {
            let mask = mask_of(part);
            if let Some(v) = part.iter().find(|&&v| g.adj[v - 1] & mask != 0) {
                return Err(Error::InvalidInput(format!(
                    "part containing vertex {v} is not independent"
                )));
            }
        }
        Ok(())
    }
}

fn mask_of(vertices: &BTreeSet<usize>) -> u64 {
    vertices.iter().fold(0, |acc, &v| acc | 1 << (v - 1))
}

impl OrderedGraph {
    pub fn new(num_vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::edgeless(num_vertices)?;
        for (u, v) in edges {
            if u == 0 || v > num_vertices || u >= v {
                return Err(Error::InvalidInput(format!(
                    "edge ({u},{v}) needs 1 <= u < v <= {num_vertices}"
                )));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn edgeless(num_vertices: usize) -> Result<Self> {
        if num_vertices == 0 || num_vertices > MAX_VERTICES {
            return Err(Error::InvalidInput(format!(
                "number of vertices must be in 1..={MAX_VERTICES}, got {num_vertices}"
            )));
        }
        Ok(OrderedGraph {
            num_vertices,
            adj: vec![0; num_vertices],
        })
    }

    /// Parses the file format: `n=<int>` then one `<u> <v>` line per edge.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line_no, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `n=` line"))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::parse(line_no, format!("expected `n=<int>`, found `{header}`")))?;
        let mut g = Self::edgeless(n).map_err(|e| Error::parse(line_no, e.to_string()))?;
        for (line_no, line) in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse(line_no, format!("expected `<u> <v>`, found `{line}`")))?;
            let [u, v] = nums[..] else {
                return Err(Error::parse(line_no, format!("expected `<u> <v>`, found `{line}`")));
            };
            if u == 0 || v > n || u >= v {
                return Err(Error::parse(
                    line_no,
                    format!("edge ({u},{v}) needs 1 <= u < v <= {n}"),
                ));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Parses the one-line form `4:1-3,2-4` (`4:` alone for edgeless).
    pub fn from_compact(s: &str) -> Result<Self> {
        let (n, edges) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::parse(1, "expected `<n>:<u>-<v>,…`"))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::parse(1, format!("invalid vertex count `{n}`")))?;
        let mut pairs = Vec::new();
        for item in edges.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (u, v) = item
                .split_once('-')
                .and_then(|(u, v)| Some((u.trim().parse().ok()?, v.trim().parse().ok()?)))
                .ok_or_else(|| Error::parse(1, format!("invalid edge `{item}`")))?;
            pairs.push((u, v));
        }
        Self::new(n, pairs)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.num_vertices);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn compact(&self) -> String {
        let edges: Vec<String> = self.edges().into_iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("{}:{}", self.num_vertices, edges.join(","))
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u - 1] |= 1 << (v - 1);
        self.adj[v - 1] |= 1 << (u - 1);
    }

    fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u - 1] &= !(1 << (v - 1));
        self.adj[v - 1] &= !(1 << (u - 1));
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.num_vertices && v >= 1 && v <= self.num_vertices && self.adj[u - 1] >> (v - 1) & 1 == 1
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.num_vertices {
            let above = self.adj[u - 1] >> u;
            out.extend(bit_positions(above).map(|j| (u, u + 1 + j)));
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        bit_positions(self.adj[v - 1]).map(|j| j + 1).collect()
    }

    /// The mirror image `i -> n + 1 - i`.
    pub fn reversed(&self) -> Self {
        let n = self.num_vertices;
        let edges = self.edges().into_iter().map(|(u, v)| (n + 1 - v, n + 1 - u));
        Self::new(n, edges).expect("mirror of a valid graph")
    }

    /// Compact form of the smaller of the graph and its mirror image.
    pub fn canonical_key(&self) -> String {
        let fwd = self.compact();
        let rev = self.reversed().compact();
        fwd.min(rev)
    }

    /// Copy with the edge `(u, v)` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self> {
        if !self.has_edge(u, v) {
            return Err(Error::InvalidInput(format!("no edge ({u},{v})")));
        }
        let mut g = self.clone();
        g.remove_edge(u, v);
        Ok(g)
    }
}

impl fmt::Debug for OrderedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderedGraph({})", self.compact())
    }
}

impl fmt::Display for OrderedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

impl FromStr for OrderedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with("n=") {
            Self::parse(s)
        } else {
            Self::from_compact(s)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for OrderedGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.num_vertices,
            edges: self.edges(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrderedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        OrderedGraph::new(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

/// Order-preserving embedding search for a fixed pattern graph.
struct GraphEmbedder<'a> {
    pattern: &'a OrderedGraph,
    /// Neighbours of pattern vertex `i` among vertices `< i` (0-based).
    back: Vec<Vec<usize>>,
    left_deg: Vec<u32>,
    right_deg: Vec<u32>,
}

impl<'a> GraphEmbedder<'a> {
    fn new(pattern: &'a OrderedGraph) -> Self {
        let k = pattern.num_vertices;
        let back = (0..k)
            .map(|i| bit_positions(pattern.adj[i] & ((1u64 << i) - 1)).collect())
            .collect();
        let left_deg = (0..k)
            .map(|i| (pattern.adj[i] & ((1u64 << i) - 1)).count_ones())
            .collect();
        let right_deg = (0..k)
            .map(|i| (pattern.adj[i] >> i >> 1).count_ones())
            .collect();
        GraphEmbedder {
            pattern,
            back,
            left_deg,
            right_deg,
        }
    }

    fn embeds(&self, host: &[u64]) -> bool {
        let k = self.pattern.num_vertices;
        if k > host.len() {
            return false;
        }
        let mut image = vec![0usize; k];
        self.place(0, 0, host, &mut image)
    }

    fn place(&self, i: usize, start: usize, host: &[u64], image: &mut [usize]) -> bool {
        let k = self.pattern.num_vertices;
        if i == k {
            return true;
        }
        let required = self.back[i].iter().fold(0u64, |acc, &j| acc | 1 << image[j]);
        for x in start..=(host.len() - (k - i)) {
            let adj = host[x];
            if adj & required != required {
                continue;
            }
            if (adj & ((1u64 << x) - 1)).count_ones() < self.left_deg[i]
                || (adj >> x >> 1).count_ones() < self.right_deg[i]
            {
                continue;
            }
            image[i] = x;
            if self.place(i + 1, x + 1, host, image) {
                return true;
            }
        }
        false
    }
}

/// Whether `h` has a subgraph order-isomorphic to `g` (extra edges of `h`
/// allowed).
pub fn og_contains(h: &OrderedGraph, g: &OrderedGraph) -> bool {
    GraphEmbedder::new(g).embeds(&h.adj)
}

fn require_edges(g: &OrderedGraph) -> Result<()> {
    if g.num_edges() == 0 {
        Err(Error::InvalidInput(
            "ordered extremal functions need a pattern with at least one edge".into(),
        ))
    } else {
        Ok(())
    }
}

/// `ex_<(n, G)` by enumerating every edge subset. Only for `n <= 6`.
pub fn og_ex_exhaustive(n: u32, g: &OrderedGraph) -> Result<u64> {
    require_edges(g)?;
    if n == 0 || n > MAX_EXHAUSTIVE_VERTICES {
        return Err(Error::OutOfRange(format!(
            "edge-subset enumeration supports 1 <= n <= {MAX_EXHAUSTIVE_VERTICES}, got {n}"
        )));
    }
    let n = n as usize;
    let all: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let embedder = GraphEmbedder::new(g);
    let mut best = 0u64;
    let mut host = vec![0u64; n];
    for subset in 0u64..(1u64 << all.len()) {
        let size = subset.count_ones() as u64;
        if size <= best {
            continue;
        }
        host.iter_mut().for_each(|m| *m = 0);
        for idx in bit_positions(subset) {
            let (u, v) = all[idx];
            host[u] |= 1 << v;
            host[v] |= 1 << u;
        }
        if !embedder.embeds(&host) {
            best = size;
        }
    }
    Ok(best)
}

struct EdgeSearch<'a> {
    edges: Vec<(usize, usize)>,
    embedder: GraphEmbedder<'a>,
    budget: &'a SearchBudget,
    best: AtomicU64,
}

impl EdgeSearch<'_> {
    fn addable(&self, host: &mut [u64], (u, v): (usize, usize)) -> bool {
        host[u] |= 1 << v;
        host[v] |= 1 << u;
        let ok = !self.embedder.embeds(host);
        host[u] &= !(1 << v);
        host[v] &= !(1 << u);
        ok
    }

    /// `open[i]` marks remaining edges that could still be added on their
    /// own; an edge blocked once stays blocked below this node.
    fn dfs(&self, idx: usize, host: &mut [u64], count: u64, open: &[bool]) {
        if !self.budget.tick() {
            return;
        }
        let mut open = open.to_vec();
        let mut potential = 0u64;
        for (slot, &edge) in open[idx..].iter_mut().zip(&self.edges[idx..]) {
            if *slot {
                if self.addable(host, edge) {
                    potential += 1;
                } else {
                    *slot = false;
                }
            }
        }
        self.best.fetch_max(count, Ordering::Relaxed);
        if count + potential <= self.best.load(Ordering::Relaxed) {
            return;
        }
        let Some(next) = (idx..self.edges.len()).find(|&i| open[i]) else {
            return;
        };
        let (u, v) = self.edges[next];
        host[u] |= 1 << v;
        host[v] |= 1 << u;
        self.dfs(next + 1, host, count + 1, &open);
        host[u] &= !(1 << v);
        host[v] &= !(1 << u);
        if self.budget.exhausted() {
            return;
        }
        open[next] = false;
        self.dfs(next + 1, host, count, &open);
    }
}

/// `ex_<(n, G)` by branch-and-bound over edge sets in lexicographic order.
pub fn og_ex_exact(n: u32, g: &OrderedGraph, node_budget: u64) -> Result<ExRecord> {
    og_ex_exact_with(n, g, &SearchConfig::with_budget(node_budget))
}

pub fn og_ex_exact_with(n: u32, g: &OrderedGraph, config: &SearchConfig) -> Result<ExRecord> {
    require_edges(g)?;
    if n == 0 || n > MAX_SEARCH_VERTICES {
        return Err(Error::OutOfRange(format!(
            "ordered-graph search supports 1 <= n <= {MAX_SEARCH_VERTICES}, got {n}"
        )));
    }
    let start = Instant::now();
    let (mut value, mut exact, mut nodes) = run_edge_search(n as usize, g, config.node_budget, config.threads);
    if !exact && config.threads > 1 {
        (value, exact, nodes) = run_edge_search(n as usize, g, config.node_budget, 1);
    }
    Ok(ExRecord {
        pattern_key: g.canonical_key(),
        kind: Kind::OrderedGraph,
        n,
        value,
        exact,
        nodes_explored: nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn run_edge_search(n: usize, g: &OrderedGraph, node_budget: u64, threads: usize) -> (u64, bool, u64) {
    let budget = SearchBudget::new(node_budget);
    let search = EdgeSearch {
        edges: (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        embedder: GraphEmbedder::new(g),
        budget: &budget,
        best: AtomicU64::new(0),
    };
    let open = vec![true; search.edges.len()];
    // Split on the first few edges: each task fixes their in/out status.
    let split = if threads > 1 { search.edges.len().min(3) } else { 0 };
    if split == 0 {
        search.dfs(0, &mut vec![0u64; n], 0, &open);
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| {
            (0u64..(1 << split)).into_par_iter().for_each(|choice| {
                let mut host = vec![0u64; n];
                let mut open = open.clone();
                let mut count = 0;
                for (i, &(u, v)) in search.edges[..split].iter().enumerate() {
                    if choice >> i & 1 == 1 {
                        if !search.addable(&mut host, (u, v)) {
                            return;
                        }
                        host[u] |= 1 << v;
                        host[v] |= 1 << u;
                        count += 1;
                    }
                    open[i] = false;
                }
                search.dfs(split, &mut host, count, &open);
            });
        });
    }
    (search.best.load(Ordering::Relaxed), !budget.exhausted(), budget.used())
}

/// Fewest intervals of consecutive vertices, each independent, that cover
/// the line. Greedy: extend the current interval until the next vertex has
/// a neighbour inside it.
pub fn interval_chromatic(g: &OrderedGraph) -> usize {
    let mut count = 1;
    let mut current = 0u64;
    for v in 0..g.num_vertices {
        if g.adj[v] & current != 0 {
            count += 1;
            current = 0;
        }
        current |= 1 << v;
    }
    count
}

/// Matrix read off a bipartite split: rows are `rows` in increasing order,
/// columns are `cols` in increasing order.
fn matrix_of(g: &OrderedGraph, rows: &[usize], cols: &[usize]) -> Option<Pattern01> {
    let ones = rows.iter().enumerate().flat_map(|(i, &r)| {
        cols.iter()
            .enumerate()
            .filter(move |&(_, &c)| g.has_edge(r.min(c), r.max(c)))
            .map(move |(j, _)| (i + 1, j + 1))
    });
    Pattern01::new(rows.len(), cols.len(), ones).ok()
}

fn orientations(p: &Pattern01) -> [Pattern01; 4] {
    let r = p.reflect_rows();
    let c = p.reflect_cols();
    let rc = r.reflect_cols();
    [p.clone(), r, c, rc]
}

/// Proper 2-colourings of `g` as vertex bitmasks of one colour class,
/// identifying a colouring with its swap. Vertices without edges are left
/// out.
fn two_colourings(g: &OrderedGraph) -> Vec<u64> {
    let n = g.num_vertices;
    let mut colour = vec![None::<bool>; n];
    let mut components: Vec<(u64, u64)> = Vec::new();
    for s in 0..n {
        if colour[s].is_some() || g.adj[s] == 0 {
            continue;
        }
        colour[s] = Some(false);
        let (mut side_a, mut side_b) = (0u64, 0u64);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let cx = colour[x].expect("coloured before push");
            if cx {
                side_b |= 1 << x;
            } else {
                side_a |= 1 << x;
            }
            for y in bit_positions(g.adj[x]) {
                match colour[y] {
                    None => {
                        colour[y] = Some(!cx);
                        stack.push(y);
                    }
                    Some(cy) if cy == cx => return Vec::new(),
                    Some(_) => {}
                }
            }
        }
        components.push((side_a, side_b));
    }
    if components.is_empty() {
        return Vec::new();
    }
    // Fix the first component's orientation to quotient out the swap.
    let rest = components.len() - 1;
    (0u64..(1 << rest))
        .map(|flips| {
            let mut class = components[0].0;
            for (i, &(a, b)) in components[1..].iter().enumerate() {
                class |= if flips >> i & 1 == 1 { b } else { a };
            }
            class
        })
        .collect()
}

/// All ordered bipartite graphs realizing `p`: rows and columns become
/// vertices, placed in every interleaving on the line, with each part read
/// in increasing or decreasing order. Members whose split into two
/// independent parts is not the only one realizing `p` are dropped.
pub fn go_family(p: &Pattern01) -> Result<BTreeSet<OrderedGraph>> {
    if p.has_zero_row() || p.has_zero_col() {
        return Err(Error::InvalidInput(
            "the G_o family is only defined for patterns without all-zero lines".into(),
        ));
    }
    let k = p.num_rows();
    let c = p.num_cols();
    let n = k + c;
    if n > MAX_VERTICES {
        return Err(Error::InvalidInput(format!(
            "pattern needs {n} vertices, more than {MAX_VERTICES}"
        )));
    }
    let variants: Vec<Pattern01> = orientations(p).into_iter().collect();
    let mut out = BTreeSet::new();
    for q in &variants {
        for row_slots in combinations(n, k) {
            let row_set: u64 = row_slots.iter().fold(0, |acc, &s| acc | 1 << s);
            let col_slots: Vec<usize> = (0..n).filter(|s| row_set >> s & 1 == 0).collect();
            let mut g = OrderedGraph::edgeless(n)?;
            for (r, c) in q.ones() {
                let a = row_slots[r - 1] + 1;
                let b = col_slots[c - 1] + 1;
                g.add_edge(a.min(b), a.max(b));
            }
            out.insert(g);
        }
    }
    out.retain(|g| decomposition_is_unique(g, &variants));
    Ok(out)
}

fn decomposition_is_unique(g: &OrderedGraph, variants: &[Pattern01]) -> bool {
    let colourings = two_colourings(g);
    let realizes = |rows: &[usize], cols: &[usize]| {
        matrix_of(g, rows, cols).is_some_and(|m| variants.contains(&m))
    };
    let mut realizing = 0;
    for class in colourings {
        let a: Vec<usize> = bit_positions(class).map(|x| x + 1).collect();
        let b: Vec<usize> = (1..=g.num_vertices)
            .filter(|v| class >> (v - 1) & 1 == 0)
            .collect();
        if realizes(&a, &b) || realizes(&b, &a) {
            realizing += 1;
        }
    }
    realizing <= 1
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=(n - (k - cur.len())) {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Removes, for every vertex `u` with a neighbour above it, the edge to its
/// smallest such neighbour.
pub fn og_reduce_smallest(g: &OrderedGraph) -> OrderedGraph {
    let mut out = g.clone();
    for u in 0..g.num_vertices {
        let above = g.adj[u] >> u >> 1;
        if above != 0 {
            let v = u + 1 + above.trailing_zeros() as usize;
            out.remove_edge(u + 1, v + 1);
        }
    }
    out
}

/// Removes, for every `u` in `part_u` with a neighbour, the edge to its
/// smallest-labelled neighbour (which lies in `part_v`).
pub fn og_bipartite_reduce(g: &OrderedGraph, parts: &Bipartition) -> Result<OrderedGraph> {
    parts.validate(g)?;
    let mut out = g.clone();
    for &u in &parts.part_u {
        let adj = g.adj[u - 1];
        if adj != 0 {
            let v = adj.trailing_zeros() as usize + 1;
            out.remove_edge(u.min(v), u.max(v));
        }
    }
    Ok(out)
}

/// Inserts a new vertex between `left` and `left + 1`, adjacent only to
/// `neighbor`. Both `left` and `left + 1` must be adjacent to `neighbor`.
pub fn og_insert_split_vertex(g: &OrderedGraph, left: usize, neighbor: usize) -> Result<OrderedGraph> {
    let n = g.num_vertices;
    if left == 0 || left >= n || neighbor == 0 || neighbor > n {
        return Err(Error::InvalidTransformation(format!(
            "need 1 <= left < {n} and 1 <= neighbor <= {n}"
        )));
    }
    for v in [left, left + 1] {
        if !g.has_edge(v.min(neighbor), v.max(neighbor)) {
            return Err(Error::InvalidTransformation(format!(
                "vertex {v} is not adjacent to {neighbor}"
            )));
        }
    }
    if n + 1 > MAX_VERTICES {
        return Err(Error::InvalidTransformation("too many vertices".into()));
    }
    let shift = |x: usize| if x > left { x + 1 } else { x };
    let mut edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (shift(u), shift(v))).collect();
    let new_vertex = left + 1;
    let target = shift(neighbor);
    edges.push((new_vertex.min(target), new_vertex.max(target)));
    OrderedGraph::new(n + 1, edges)
}

/// Inserts an isolated vertex with `position` vertices before it.
pub fn og_insert_isolated(g: &OrderedGraph, position: usize) -> Result<OrderedGraph> {
    let n = g.num_vertices;
    if position > n {
        return Err(Error::OutOfRange(format!(
            "insertion position {position} exceeds {n} vertices"
        )));
    }
    let shift = |x: usize| if x > position { x + 1 } else { x };
    let edges = g.edges().into_iter().map(|(u, v)| (shift(u), shift(v)));
    OrderedGraph::new(n + 1, edges)
}

/// Whether the graph, order forgotten, is the 4-cycle `K_{2,2}`.
pub fn underlying_is_k22(g: &OrderedGraph) -> bool {
    // Four vertices of degree two can only form a 4-cycle.
    g.num_vertices == 4 && (1..=4).all(|v| g.degree(v) == 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn og(s: &str) -> OrderedGraph {
        s.parse().unwrap()
    }

    fn brute_interval_chromatic(g: &OrderedGraph) -> usize {
        let n = g.num_vertices();
        (0u64..(1 << (n - 1)))
            .filter(|cuts| {
                let mut start = 0;
                for end in 0..n {
                    let last = end == n - 1 || cuts >> end & 1 == 1;
                    if last {
                        for a in start..=end {
                            for b in a + 1..=end {
                                if g.has_edge(a + 1, b + 1) {
                                    return false;
                                }
                            }
                        }
                        start = end + 1;
                    }
                }
                true
            })
            .map(|cuts| cuts.count_ones() as usize + 1)
            .min()
            .unwrap()
    }

    #[test]
    fn parse_and_print() {
        let g = OrderedGraph::parse("n=4\n1 3\n\n2 4\n").unwrap();
        assert_eq!(g, og("4:1-3,2-4"));
        assert_eq!(g.to_text(), "n=4\n1 3\n2 4\n");
        assert!(OrderedGraph::parse("n=3\n2 2\n").is_err());
        assert!(OrderedGraph::parse("n=3\n3 1\n").is_err());
        assert!(OrderedGraph::parse("n=3\n1 4\n").is_err());
        assert!(OrderedGraph::parse("m=3\n").is_err());
        assert!(OrderedGraph::parse("n=3\n1 2 3\n").is_err());
        assert_eq!(og("5:"), OrderedGraph::edgeless(5).unwrap());
    }

    #[test]
    fn containment_examples() {
        let edge = og("2:1-2");
        assert!(og_contains(&og("5:2-4"), &edge));
        assert!(!og_contains(&og("5:"), &edge));
        assert!(!og_contains(&og("4:1-3,2-4"), &og("4:1-2,3-4")));
        assert!(og_contains(&og("4:1-2,3-4"), &og("4:1-2,3-4")));
        assert!(og_contains(&og("5:1-2,2-5,3-4"), &og("4:1-2,3-4")));
    }

    #[test]
    fn exact_values() {
        for n in 1..=6 {
            assert_eq!(og_ex_exact(n, &og("2:1-2"), 1_000_000).unwrap().value, 0);
        }
        assert_eq!(og_ex_exact(2, &og("3:1-2"), 1_000_000).unwrap().value, 1);
        let path = og("3:1-2,2-3");
        assert_eq!(
            og_ex_exact(4, &path, 1_000_000).unwrap().value,
            og_ex_exhaustive(4, &path).unwrap()
        );
        assert!(og_ex_exact(3, &og("3:"), 100).is_err());
    }

    #[test]
    fn interval_chromatic_examples() {
        assert_eq!(interval_chromatic(&og("4:")), 1);
        assert_eq!(interval_chromatic(&og("4:1-3,2-4")), 2);
        assert_eq!(interval_chromatic(&og("3:1-2,2-3")), 3);
        assert_eq!(brute_interval_chromatic(&og("3:1-2,2-3")), 3);
    }

    #[test]
    fn go_family_examples() {
        let single: Pattern01 = "1".parse().unwrap();
        assert_eq!(go_family(&single).unwrap(), [og("2:1-2")].into());
        let star: Pattern01 = "11".parse().unwrap();
        assert_eq!(
            go_family(&star).unwrap(),
            [og("3:1-2,1-3"), og("3:1-2,2-3"), og("3:1-3,2-3")].into()
        );
        let alt: Pattern01 = "1010;0101".parse().unwrap();
        let fam = go_family(&alt).unwrap();
        assert!(fam.contains(&og("6:1-3,1-5,2-4,2-6")));
        assert_eq!(interval_chromatic(&og("6:1-3,1-5,2-4,2-6")), 2);
        assert!(go_family(&"10;00".parse().unwrap()).is_err());
    }

    #[test]
    fn non_unique_split_is_dropped() {
        // Two disjoint edges: swapping the sides of one edge always yields
        // the identity or its mirror again, so no member survives.
        let id: Pattern01 = "10;01".parse().unwrap();
        assert!(go_family(&id).unwrap().is_empty());
        // A connected pattern has a single split.
        let q: Pattern01 = "101;011".parse().unwrap();
        assert!(!go_family(&q).unwrap().is_empty());
    }

    #[test]
    fn reductions() {
        assert_eq!(og_reduce_smallest(&og("3:1-2,2-3")), og("3:"));
        assert_eq!(og_reduce_smallest(&og("4:1-3,2-3,1-4")), og("4:1-4"));
        assert_eq!(og_reduce_smallest(&og("4:")), og("4:"));

        let g = og("2:1-2");
        assert_eq!(og_bipartite_reduce(&g, &Bipartition::new([1], [2])).unwrap(), og("2:"));
        let g = og("4:1-2,1-4,3-4");
        let parts = Bipartition::new([1, 3], [2, 4]);
        assert_eq!(og_bipartite_reduce(&g, &parts).unwrap(), og("4:1-4"));
        let k22 = og("4:1-3,1-4,2-3,2-4");
        let parts = Bipartition::new([1, 2], [3, 4]);
        assert_eq!(og_bipartite_reduce(&k22, &parts).unwrap(), og("4:1-4,2-4"));
        assert!(og_bipartite_reduce(&k22, &Bipartition::new([1, 3], [2, 4])).is_err());
        assert!(og_bipartite_reduce(&k22, &Bipartition::new([1], [3, 4])).is_err());
    }

    #[test]
    fn insertions() {
        assert_eq!(
            og_insert_split_vertex(&og("3:1-3,2-3"), 1, 3).unwrap(),
            og("4:1-4,2-4,3-4")
        );
        assert!(matches!(
            og_insert_split_vertex(&og("2:1-2"), 1, 2),
            Err(Error::InvalidTransformation(_))
        ));
        let g = og_insert_split_vertex(&og("4:1-3,1-4,2-3,2-4"), 3, 1).unwrap();
        assert_eq!(g, og("5:1-3,1-4,1-5,2-3,2-5"));
        assert_eq!(g.neighbors(4), vec![1]);

        assert_eq!(og_insert_isolated(&og("2:1-2"), 1).unwrap(), og("3:1-3"));
        assert_eq!(og_insert_isolated(&og("1:"), 0).unwrap(), og("2:"));
        assert_eq!(og_insert_isolated(&og("3:1-2,2-3"), 3).unwrap(), og("4:1-2,2-3"));
        assert!(og_insert_isolated(&og("3:1-2"), 4).is_err());
    }

    #[test]
    fn k22_detection() {
        assert!(underlying_is_k22(&og("4:1-3,1-4,2-3,2-4")));
        assert!(underlying_is_k22(&og("4:1-2,2-3,3-4,1-4")));
        assert!(!underlying_is_k22(&og("4:1-2,3-4")));
        assert!(!underlying_is_k22(&og("5:1-2,2-3,3-4,1-4")));
    }
}
