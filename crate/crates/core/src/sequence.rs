//! Sequences, isomorphic-subsequence containment and generalized
//! Davenport–Schinzel extremal values.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::extremal::{ExRecord, Kind, SearchBudget};

/// A word in normalized form: symbols are `1, 2, 3, …` in order of first
/// occurrence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence {
    letters: Vec<u32>,
    alphabet_size: usize,
}

/// Maximal runs of equal adjacent letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub runs: Vec<(u32, usize)>,
}

impl BlockDecomposition {
    pub fn num_runs(&self) -> usize {
        self.runs.len()
    }

    pub fn max_run(&self) -> usize {
        self.runs.iter().map(|&(_, len)| len).max().unwrap_or(0)
    }
}

/// Renames symbols in order of first occurrence. Returns the renamed word
/// and the number of distinct symbols.
fn normalize(letters: &[u32]) -> (Vec<u32>, usize) {
    let mut names: Vec<(u32, u32)> = Vec::new();
    let out = letters
        .iter()
        .map(|&x| match names.iter().find(|(from, _)| *from == x) {
            Some(&(_, to)) => to,
            None => {
                let to = names.len() as u32 + 1;
                names.push((x, to));
                to
            }
        })
        .collect();
    (out, names.len())
}

impl Sequence {
    /// Builds a sequence from arbitrary symbols, normalizing them.
    pub fn new(letters: impl IntoIterator<Item = u32>) -> Result<Self> {
        let raw: Vec<u32> = letters.into_iter().collect();
        if raw.is_empty() {
            return Err(Error::InvalidInput("sequence must be non-empty".into()));
        }
        let (letters, alphabet_size) = normalize(&raw);
        Ok(Sequence {
            letters,
            alphabet_size,
        })
    }

    /// Parses either lowercase letters (`abcacbc`) or comma-separated
    /// positive integers (`1,2,3,1`).
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::parse(1, "empty sequence"));
        }
        if text.chars().all(|c| c.is_ascii_lowercase()) {
            return Self::new(text.bytes().map(|b| u32::from(b - b'a') + 1));
        }
        let mut letters = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let value: u32 = part
                .parse()
                .map_err(|_| Error::parse(1, format!("invalid symbol `{part}`")))?;
            if value == 0 {
                return Err(Error::parse(1, "symbols must be positive integers"));
            }
            letters.push(value);
        }
        Self::new(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.letters.iter().rev().copied()).expect("non-empty")
    }

    /// Normalized text with the reversal; the lexicographically smaller of
    /// the two. Reversal preserves the extremal function.
    pub fn canonical_key(&self) -> String {
        let fwd = self.to_string();
        let rev = self.reversed().to_string();
        fwd.min(rev)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet_size <= 26 {
            for &x in &self.letters {
                write!(f, "{}", (b'a' + (x - 1) as u8) as char)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence({self})")
    }
}

impl FromStr for Sequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

pub fn blocks(u: &Sequence) -> BlockDecomposition {
    BlockDecomposition {
        runs: runs_of(&u.letters),
    }
}

fn runs_of(letters: &[u32]) -> Vec<(u32, usize)> {
    let mut runs: Vec<(u32, usize)> = Vec::new();
    for &x in letters {
        match runs.last_mut() {
            Some((sym, len)) if *sym == x => *len += 1,
            _ => runs.push((x, 1)),
        }
    }
    runs
}

/// Backtracking matcher for isomorphic subsequences. `pattern` must be
/// normalized.
struct SubsequenceMatcher<'a> {
    host: &'a [u32],
    pattern: &'a [u32],
    map: Vec<u32>,
    used: Vec<bool>,
}

impl<'a> SubsequenceMatcher<'a> {
    fn new(host: &'a [u32], pattern: &'a [u32], pattern_alphabet: usize) -> Self {
        let max_host = host.iter().copied().max().unwrap_or(0) as usize;
        SubsequenceMatcher {
            host,
            pattern,
            map: vec![0; pattern_alphabet + 1],
            used: vec![false; max_host + 1],
        }
    }

    /// Whether `pattern[j..]` embeds into `host[pos..]` extending the
    /// current symbol map.
    fn search(&mut self, j: usize, pos: usize) -> bool {
        if j == self.pattern.len() {
            return true;
        }
        if self.host.len() - pos < self.pattern.len() - j {
            return false;
        }
        let sym = self.pattern[j] as usize;
        let image = self.map[sym];
        if image != 0 {
            // With the map fixed, the earliest occurrence dominates later ones.
            return match self.host[pos..].iter().position(|&x| x == image) {
                Some(off) => self.search(j + 1, pos + off + 1),
                None => false,
            };
        }
        let mut tried: Vec<u32> = Vec::new();
        for idx in pos..self.host.len() {
            let x = self.host[idx];
            if self.used[x as usize] || tried.contains(&x) {
                continue;
            }
            if self.host.len() - idx < self.pattern.len() - j {
                break;
            }
            tried.push(x);
            self.map[sym] = x;
            self.used[x as usize] = true;
            let found = self.search(j + 1, idx + 1);
            self.map[sym] = 0;
            self.used[x as usize] = false;
            if found {
                return true;
            }
        }
        false
    }

    /// Like [`search`](Self::search) from the start, but the first pattern
    /// letter is pinned to `host[0]`.
    fn search_anchored_first(&mut self) -> bool {
        if self.pattern.is_empty() || self.host.len() < self.pattern.len() {
            return false;
        }
        let sym = self.pattern[0] as usize;
        let x = self.host[0];
        self.map[sym] = x;
        self.used[x as usize] = true;
        self.search(1, 1)
    }
}

/// Whether some subsequence of `u` is isomorphic to `v`.
pub fn seq_contains(u: &Sequence, v: &Sequence) -> bool {
    SubsequenceMatcher::new(&u.letters, &v.letters, v.alphabet_size).search(0, 0)
}

/// Whether `host` contains `pattern` by a copy that uses the last letter of
/// `host`. `host` may be an arbitrary (not necessarily normalized) word.
fn contains_ending_at_last(host: &[u32], pattern: &Sequence, rev_pattern: &[u32]) -> bool {
    let rev_host: Vec<u32> = host.iter().rev().copied().collect();
    SubsequenceMatcher::new(&rev_host, rev_pattern, pattern.alphabet_size).search_anchored_first()
}

/// Inserts one more copy of `symbol` at insertion index `gap_index`
/// (0-based: the number of letters placed before the new copy). The gap must
/// lie between two consecutive occurrences of `symbol`.
pub fn insert_repeat(u: &Sequence, symbol: u32, gap_index: usize) -> Result<Sequence> {
    let before = u.letters[..gap_index.min(u.len())].contains(&symbol);
    let after = gap_index < u.len() && u.letters[gap_index..].contains(&symbol);
    if !(before && after) {
        return Err(Error::InvalidTransformation(format!(
            "gap {gap_index} does not lie between two occurrences of symbol {symbol}"
        )));
    }
    let mut letters = u.letters.clone();
    letters.insert(gap_index, symbol);
    Sequence::new(letters)
}

struct SeqSearch<'a> {
    forbidden: &'a Sequence,
    rev_forbidden: Vec<u32>,
    window: usize,
    max_symbols: u32,
    budget: &'a SearchBudget,
    best: usize,
}

impl SeqSearch<'_> {
    fn extend(&mut self, word: &mut Vec<u32>, used: u32) {
        if !self.budget.tick() {
            return;
        }
        self.best = self.best.max(word.len());
        let next_new = (used + 1).min(self.max_symbols);
        let recent_from = word.len().saturating_sub(self.window.saturating_sub(1));
        for x in 1..=next_new {
            if word[recent_from..].contains(&x) {
                continue;
            }
            word.push(x);
            if !contains_ending_at_last(word, self.forbidden, &self.rev_forbidden) {
                self.extend(word, used.max(x));
            }
            word.pop();
            if self.budget.exhausted() {
                return;
            }
        }
    }
}

/// Exact `Ex(u, n)`: the longest sequence on at most `n` symbols that
/// avoids `u` and in which every `r` consecutive letters are distinct,
/// `r` being the number of distinct symbols of `u`.
pub fn seq_ex_exact(u: &Sequence, n: u32, node_budget: u64) -> Result<ExRecord> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let start = Instant::now();
    let budget = SearchBudget::new(node_budget);
    let mut search = SeqSearch {
        forbidden: u,
        rev_forbidden: u.reversed().letters,
        window: u.alphabet_size,
        max_symbols: n,
        budget: &budget,
        best: 0,
    };
    let mut word = Vec::new();
    search.extend(&mut word, 0);
    Ok(ExRecord {
        pattern_key: u.canonical_key(),
        kind: Kind::Sequence,
        n,
        value: search.best as u64,
        exact: !budget.exhausted(),
        nodes_explored: budget.used(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Every normalized sequence over exactly `k` symbols with at most
/// `segment_cap` runs, each run of length 1 or 2, that avoids `ababa`.
/// For `k = 2`, `ababa` itself is included whenever `2 * segment_cap >= 5`.
/// Ordered by length, then lexicographically.
pub fn mnl_seq_candidates(k: usize, segment_cap: usize) -> Result<impl Iterator<Item = Sequence>> {
    if k < 2 {
        return Err(Error::InvalidInput("k must be at least 2".into()));
    }
    let ababa = Sequence::new([1, 2, 1, 2, 1]).expect("literal");
    let rev = ababa.reversed().letters;
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut word = Vec::new();
    grow_candidate(&mut word, 0, 0, k as u32, segment_cap, &ababa, &rev, &mut out);
    // `ababa` itself is the one exception to the avoidance filter. It is
    // also exempt from the run cap, but kept within length 2 * cap.
    if k == 2 && 2 * segment_cap >= ababa.len() {
        out.push(ababa.letters().to_vec());
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out
        .into_iter()
        .map(|letters| Sequence::new(letters).expect("non-empty")))
}

#[allow(clippy::too_many_arguments)]
fn grow_candidate(
    word: &mut Vec<u32>,
    runs: usize,
    used: u32,
    k: u32,
    cap: usize,
    ababa: &Sequence,
    rev_ababa: &[u32],
    out: &mut Vec<Vec<u32>>,
) {
    if used == k {
        out.push(word.clone());
    }
    if runs == cap {
        return;
    }
    // Every remaining run can introduce at most one new symbol.
    if (used as usize) + (cap - runs) < k as usize && used < k {
        return;
    }
    let prev = word.last().copied();
    for x in 1..=(used + 1).min(k) {
        if Some(x) == prev {
            continue;
        }
        for len in 1..=2 {
            let base = word.len();
            let mut hit = false;
            for _ in 0..len {
                word.push(x);
                if contains_ending_at_last(word, ababa, rev_ababa) {
                    hit = true;
                }
            }
            if !hit {
                grow_candidate(word, runs + 1, used.max(x), k, cap, ababa, rev_ababa, out);
            }
            word.truncate(base);
        }
    }
}
