//! 0-1 matrix patterns.
//!
//! Positions are 1-indexed with row 1 at the top and column 1 at the left.
//! Internally a pattern keeps one bitmask per row (bit `c - 1` set means a
//! one in column `c`) and the transposed per-column view, so that both
//! orientations are available to the containment search.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::{bit_positions, low_mask, reverse_bits};
use crate::error::{Error, Result};
use crate::sequence::Sequence;

/// Largest supported number of rows or columns.
pub const MAX_DIM: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern01 {
    num_rows: usize,
    num_cols: usize,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "row" => Ok(Axis::Row),
            "column" | "col" => Ok(Axis::Column),
            other => Err(Error::InvalidInput(format!("unknown axis `{other}`"))),
        }
    }
}

fn check_dims(num_rows: usize, num_cols: usize) -> Result<()> {
    if num_rows == 0 || num_cols == 0 {
        return Err(Error::InvalidInput(format!(
            "pattern dimensions must be positive, got {num_rows}x{num_cols}"
        )));
    }
    if num_rows > MAX_DIM || num_cols > MAX_DIM {
        return Err(Error::InvalidInput(format!(
            "pattern dimensions are limited to {MAX_DIM}x{MAX_DIM}, got {num_rows}x{num_cols}"
        )));
    }
    Ok(())
}

fn transpose_masks(masks: &[u64], width: usize) -> Vec<u64> {
    let mut out = vec![0u64; width];
    for (i, &m) in masks.iter().enumerate() {
        for j in bit_positions(m) {
            out[j] |= 1 << i;
        }
    }
    out
}

impl Pattern01 {
    /// Builds a pattern from 1-indexed `(row, col)` positions.
    pub fn new(
        num_rows: usize,
        num_cols: usize,
        ones: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        check_dims(num_rows, num_cols)?;
        let mut rows = vec![0u64; num_rows];
        for (r, c) in ones {
            if r == 0 || r > num_rows || c == 0 || c > num_cols {
                return Err(Error::InvalidInput(format!(
                    "position ({r},{c}) lies outside a {num_rows}x{num_cols} pattern"
                )));
            }
            rows[r - 1] |= 1 << (c - 1);
        }
        Ok(Self::from_row_masks_unchecked(num_rows, num_cols, rows))
    }

    /// Builds a pattern from per-row column bitmasks (bit 0 is column 1).
    pub fn from_row_masks(num_cols: usize, rows: Vec<u64>) -> Result<Self> {
        check_dims(rows.len(), num_cols)?;
        let limit = low_mask(num_cols);
        if rows.iter().any(|&m| m & !limit != 0) {
            return Err(Error::InvalidInput(format!(
                "row mask has bits beyond column {num_cols}"
            )));
        }
        Ok(Self::from_row_masks_unchecked(rows.len(), num_cols, rows))
    }

    pub(crate) fn from_row_masks_unchecked(num_rows: usize, num_cols: usize, rows: Vec<u64>) -> Self {
        debug_assert_eq!(rows.len(), num_rows);
        let cols = transpose_masks(&rows, num_cols);
        Pattern01 {
            num_rows,
            num_cols,
            rows,
            cols,
        }
    }

    /// An all-zero pattern of the given shape.
    pub fn zeros(num_rows: usize, num_cols: usize) -> Result<Self> {
        Self::new(num_rows, num_cols, std::iter::empty())
    }

    /// Parses the file format: one line per row, `0`/`1` only, uniform width.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut width = None;
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.is_empty() {
                return Err(Error::parse(line_no, "empty row"));
            }
            let mut mask = 0u64;
            let mut len = 0usize;
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' if j < MAX_DIM => mask |= 1 << j,
                    '1' => {}
                    other => {
                        return Err(Error::parse(
                            line_no,
                            format!("unexpected character {other:?}, expected '0' or '1'"),
                        ))
                    }
                }
                len += 1;
            }
            match width {
                None => width = Some(len),
                Some(w) if w != len => {
                    return Err(Error::parse(
                        line_no,
                        format!("ragged row: expected {w} columns, found {len}"),
                    ))
                }
                Some(_) => {}
            }
            rows.push(mask);
        }
        let width = width.ok_or_else(|| Error::parse(1, "no rows"))?;
        check_dims(rows.len(), width)?;
        Ok(Self::from_row_masks_unchecked(rows.len(), width, rows))
    }

    /// Parses the compact one-line form, rows separated by `;` or `/`
    /// (for example `101;011`).
    pub fn from_compact(s: &str) -> Result<Self> {
        let text: String = s
            .trim()
            .split([';', '/'])
            .map(|row| format!("{}\n", row.trim()))
            .collect();
        Self::parse(&text)
    }

    /// Serializes to the file format (newline-terminated rows).
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.num_rows * (self.num_cols + 1));
        for line in self.row_strings() {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// Rows joined by `;`.
    pub fn compact(&self) -> String {
        self.row_strings().join(";")
    }

    pub fn row_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|&m| {
                (0..self.num_cols)
                    .map(|j| if m >> j & 1 == 1 { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    /// Whether there is a one at 1-indexed `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> bool {
        row >= 1
            && row <= self.num_rows
            && col >= 1
            && col <= self.num_cols
            && self.rows[row - 1] >> (col - 1) & 1 == 1
    }

    /// Column bitmask of 0-indexed row `i`.
    pub fn row_mask(&self, i: usize) -> u64 {
        self.rows[i]
    }

    /// Row bitmask of 0-indexed column `j`.
    pub fn col_mask(&self, j: usize) -> u64 {
        self.cols[j]
    }

    pub fn row_masks(&self) -> &[u64] {
        &self.rows
    }

    pub fn col_masks(&self) -> &[u64] {
        &self.cols
    }

    pub fn one_count(&self) -> usize {
        self.rows.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn has_ones(&self) -> bool {
        self.rows.iter().any(|&m| m != 0)
    }

    /// All one-positions, 1-indexed, in row-major order.
    pub fn ones(&self) -> BTreeSet<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| bit_positions(m).map(move |j| (i + 1, j + 1)))
            .collect()
    }

    pub fn has_zero_row(&self) -> bool {
        self.rows.contains(&0)
    }

    pub fn has_zero_col(&self) -> bool {
        self.cols.contains(&0)
    }

    /// Copy of the pattern with the one at `(row, col)` turned into a zero.
    pub fn without_one(&self, row: usize, col: usize) -> Result<Self> {
        if !self.get(row, col) {
            return Err(Error::InvalidInput(format!("no one at ({row},{col})")));
        }
        let mut rows = self.rows.clone();
        rows[row - 1] &= !(1 << (col - 1));
        Ok(Self::from_row_masks_unchecked(self.num_rows, self.num_cols, rows))
    }

    /// Every pattern obtained by deleting exactly one one-entry.
    pub fn one_deletions(&self) -> Vec<Self> {
        self.ones()
            .into_iter()
            .map(|(r, c)| self.without_one(r, c).expect("position taken from ones()"))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_row_masks_unchecked(self.num_cols, self.num_rows, self.cols.clone())
    }

    /// Reflection over a horizontal line (row order reversed).
    pub fn reflect_rows(&self) -> Self {
        let rows = self.rows.iter().rev().copied().collect();
        Self::from_row_masks_unchecked(self.num_rows, self.num_cols, rows)
    }

    /// Reflection over a vertical line (column order reversed).
    pub fn reflect_cols(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|&m| reverse_bits(m, self.num_cols))
            .collect();
        Self::from_row_masks_unchecked(self.num_rows, self.num_cols, rows)
    }

    /// Quarter turn clockwise.
    pub fn rotate90(&self) -> Self {
        self.transpose().reflect_cols()
    }

    /// The eight images under the dihedral group, in a fixed order:
    /// identity, rotations by 90/180/270 degrees, row reflection, column
    /// reflection, transpose and anti-transpose. May contain repeats.
    pub fn dihedral_images(&self) -> [Self; 8] {
        let r90 = self.rotate90();
        let r180 = r90.rotate90();
        let r270 = r180.rotate90();
        let t = self.transpose();
        let anti = r180.transpose();
        [
            self.clone(),
            r90,
            r180,
            r270,
            self.reflect_rows(),
            self.reflect_cols(),
            t,
            anti,
        ]
    }

    /// Checks the one-entry at 1-indexed `(row, col)` exists.
    fn require_one(&self, row: usize, col: usize) -> Result<()> {
        if self.get(row, col) {
            Ok(())
        } else {
            Err(Error::InvalidTransformation(format!(
                "pattern has no one at ({row},{col})"
            )))
        }
    }
}

impl fmt::Debug for Pattern01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.compact())
    }
}

impl fmt::Display for Pattern01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

impl FromStr for Pattern01 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_compact(s)
    }
}

impl Serialize for Pattern01 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Pattern01 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<String>::deserialize(deserializer)?;
        let text: String = rows.iter().map(|r| format!("{r}\n")).collect();
        Pattern01::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Precomputed needle data for repeated containment queries against hosts
/// given as raw bitmask views.
#[derive(Debug, Clone)]
pub(crate) struct Embedder {
    num_rows: usize,
    num_cols: usize,
    cols: Vec<u64>,
    col_pop: Vec<u32>,
}

impl Embedder {
    pub(crate) fn new(needle: &Pattern01) -> Self {
        Embedder {
            num_rows: needle.num_rows,
            num_cols: needle.num_cols,
            cols: needle.cols.clone(),
            col_pop: needle.cols.iter().map(|m| m.count_ones()).collect(),
        }
    }

    /// Whether the host contains the needle. `host_rows[i]` is the column
    /// bitmask of host row `i` and `host_cols[j]` the row bitmask of host
    /// column `j`. With `fix_last`, only copies whose last column is the
    /// host's last column are considered.
    pub(crate) fn embeds(&self, host_rows: &[u64], host_cols: &[u64], fix_last: bool) -> bool {
        if self.num_cols > host_cols.len() || self.num_rows > host_rows.len() {
            return false;
        }
        let mut required = vec![0u64; self.num_rows];
        self.place(0, 0, &mut required, host_rows, host_cols, fix_last)
    }

    fn place(
        &self,
        t: usize,
        start: usize,
        required: &mut [u64],
        host_rows: &[u64],
        host_cols: &[u64],
        fix_last: bool,
    ) -> bool {
        if t == self.num_cols {
            return true;
        }
        let host_width = host_cols.len();
        let hi = host_width - (self.num_cols - t);
        let lo = if fix_last && t + 1 == self.num_cols {
            host_width - 1
        } else {
            start
        };
        if lo < start {
            return false;
        }
        let needle_col = self.cols[t];
        for c in lo..=hi {
            if host_cols[c].count_ones() < self.col_pop[t] {
                continue;
            }
            let bit = 1u64 << c;
            for i in bit_positions(needle_col) {
                required[i] |= bit;
            }
            let ok = rows_fit(required, host_rows)
                && self.place(t + 1, c + 1, required, host_rows, host_cols, fix_last);
            for i in bit_positions(needle_col) {
                required[i] &= !bit;
            }
            if ok {
                return true;
            }
        }
        false
    }
}

/// Greedy row assignment: needle row `i` must land on a host row holding all
/// columns in `required[i]`, with rows strictly increasing. Taking the first
/// fitting host row for each needle row is optimal.
#[inline]
fn rows_fit(required: &[u64], host_rows: &[u64]) -> bool {
    let mut ptr = 0;
    for &req in required {
        while ptr < host_rows.len() && host_rows[ptr] & req != req {
            ptr += 1;
        }
        if ptr == host_rows.len() {
            return false;
        }
        ptr += 1;
    }
    true
}

/// Whether `haystack` contains `needle`: some choice of increasing rows and
/// columns of `haystack` covers every one of `needle`.
pub fn contains(haystack: &Pattern01, needle: &Pattern01) -> bool {
    Embedder::new(needle).embeds(&haystack.rows, &haystack.cols, false)
}

/// The orbit of `p` under rotations and reflections.
pub fn symmetry_variants(p: &Pattern01) -> BTreeSet<Pattern01> {
    p.dihedral_images().into_iter().collect()
}

/// Text key shared by exactly the members of one symmetry orbit: the
/// compact form of the member whose file serialization is least.
pub fn canonical_key(p: &Pattern01) -> String {
    p.dihedral_images()
        .into_iter()
        .min_by_key(|q| q.to_text())
        .expect("eight images")
        .compact()
}

/// Inserts a new column right after `left_col` holding a single one in
/// `row`. Requires ones at `(row, left_col)` and `(row, left_col + 1)`.
pub fn insert_split_column(p: &Pattern01, row: usize, left_col: usize) -> Result<Pattern01> {
    p.require_one(row, left_col)?;
    p.require_one(row, left_col + 1)?;
    if p.num_cols + 1 > MAX_DIM {
        return Err(Error::InvalidTransformation(format!(
            "result would exceed {MAX_DIM} columns"
        )));
    }
    let keep = low_mask(left_col);
    let rows = p
        .rows
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let shifted = (m & keep) | ((m & !keep) << 1);
            if i + 1 == row {
                shifted | (1 << left_col)
            } else {
                shifted
            }
        })
        .collect();
    Ok(Pattern01::from_row_masks_unchecked(p.num_rows, p.num_cols + 1, rows))
}

/// Inserts an all-zero row or column so that it ends up with `index`
/// lines before it (`0 ..= extent`).
pub fn insert_zero_line(p: &Pattern01, axis: Axis, index: usize) -> Result<Pattern01> {
    match axis {
        Axis::Row => {
            if index > p.num_rows {
                return Err(Error::OutOfRange(format!(
                    "row insertion index {index} exceeds {} rows",
                    p.num_rows
                )));
            }
            check_dims(p.num_rows + 1, p.num_cols)?;
            let mut rows = p.rows.clone();
            rows.insert(index, 0);
            Ok(Pattern01::from_row_masks_unchecked(p.num_rows + 1, p.num_cols, rows))
        }
        Axis::Column => {
            if index > p.num_cols {
                return Err(Error::OutOfRange(format!(
                    "column insertion index {index} exceeds {} columns",
                    p.num_cols
                )));
            }
            check_dims(p.num_rows, p.num_cols + 1)?;
            let keep = low_mask(index);
            let rows = p
                .rows
                .iter()
                .map(|&m| (m & keep) | ((m & !keep) << 1))
                .collect();
            Ok(Pattern01::from_row_masks_unchecked(p.num_rows, p.num_cols + 1, rows))
        }
    }
}

/// Deletes the leftmost one of every row.
pub fn reduce_leftmost(p: &Pattern01) -> Result<Pattern01> {
    if let Some(i) = p.rows.iter().position(|&m| m == 0) {
        return Err(Error::InvalidInput(format!("row {} has no ones", i + 1)));
    }
    let rows = p.rows.iter().map(|&m| m & (m - 1)).collect();
    Ok(Pattern01::from_row_masks_unchecked(p.num_rows, p.num_cols, rows))
}

/// One row index (1-based) per column, chosen by the left-to-right column
/// scan: a column with a single one contributes that row; any other column
/// contributes its topmost row that differs from the previous letter (the
/// first column simply contributes its topmost row).
pub fn scan_letters(p: &Pattern01) -> Result<Vec<usize>> {
    let mut letters: Vec<usize> = Vec::with_capacity(p.num_cols);
    for (j, &col) in p.cols.iter().enumerate() {
        if col == 0 {
            return Err(Error::InvalidInput(format!("column {} has no ones", j + 1)));
        }
        let letter = match letters.last() {
            Some(&prev) if col.count_ones() > 1 => {
                let avail = col & !(1u64 << (prev - 1));
                avail.trailing_zeros() as usize + 1
            }
            _ => col.trailing_zeros() as usize + 1,
        };
        letters.push(letter);
    }
    Ok(letters)
}

/// [`scan_letters`] as a normalized [`Sequence`].
pub fn scan_reduction(p: &Pattern01) -> Result<Sequence> {
    let letters: Vec<u32> = scan_letters(p)?.into_iter().map(|x| x as u32).collect();
    Sequence::new(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern01 {
        s.parse().unwrap()
    }

    #[test]
    fn containment_examples() {
        assert!(contains(&pat("11;11"), &pat("11")));
        assert!(!contains(&pat("10;01"), &pat("11")));
        assert!(!contains(&pat("1010;0101"), &pat("101;011")));
        assert!(contains(&pat("1010;0101"), &pat("1010;0101")));
        assert!(!contains(&pat("11"), &pat("111")));
    }

    #[test]
    fn zero_needle_lines_only_need_room() {
        assert!(contains(&pat("1"), &pat("1")));
        assert!(!contains(&pat("1"), &pat("10")));
        assert!(contains(&pat("11"), &pat("10")));
        assert!(contains(&pat("010;000;010"), &pat("1;0;1")));
        assert!(!contains(&pat("010;010"), &pat("1;0;1")));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(Pattern01::parse("10\n1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Pattern01::parse("1x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(Pattern01::parse("").is_err());
        assert!(Pattern01::parse("10\n\n01\n").is_err());
        let p = Pattern01::parse("101\n011\n").unwrap();
        assert_eq!(p.to_text(), "101\n011\n");
        assert_eq!(p.ones().len(), 4);
        assert!(Pattern01::new(0, 2, []).is_err());
        assert!(Pattern01::new(2, 2, [(3, 1)]).is_err());
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(symmetry_variants(&pat("11")), [pat("11"), pat("1;1")].into());
        assert_eq!(symmetry_variants(&pat("1")).len(), 1);
        assert_eq!(symmetry_variants(&pat("101;011")).len(), 8);
        assert_eq!(symmetry_variants(&pat("1010;0101")).len(), 4);
    }

    #[test]
    fn canonical_keys() {
        assert_eq!(canonical_key(&pat("11")), canonical_key(&pat("1;1")));
        assert_eq!(canonical_key(&pat("101;011")), canonical_key(&pat("011;101")));
        assert_ne!(canonical_key(&pat("10;01")), canonical_key(&pat("11;11")));
    }

    #[test]
    fn split_column() {
        assert_eq!(insert_split_column(&pat("11"), 1, 1).unwrap(), pat("111"));
        assert!(matches!(
            insert_split_column(&pat("11;01"), 2, 1),
            Err(Error::InvalidTransformation(_))
        ));
        assert_eq!(insert_split_column(&pat("11;11"), 1, 1).unwrap(), pat("111;101"));
        assert!(insert_split_column(&pat("101"), 1, 1).is_err());
    }

    #[test]
    fn zero_lines() {
        assert_eq!(insert_zero_line(&pat("11"), Axis::Column, 1).unwrap(), pat("101"));
        assert_eq!(insert_zero_line(&pat("1"), Axis::Row, 0).unwrap(), pat("0;1"));
        assert_eq!(insert_zero_line(&pat("11;11"), Axis::Column, 2).unwrap(), pat("110;110"));
        assert!(matches!(
            insert_zero_line(&pat("11"), Axis::Row, 2),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn leftmost_reduction() {
        assert_eq!(reduce_leftmost(&pat("101;011")).unwrap(), pat("001;001"));
        assert_eq!(reduce_leftmost(&pat("11;11")).unwrap(), pat("01;01"));
        assert_eq!(reduce_leftmost(&pat("1010;0101")).unwrap(), pat("0010;0001"));
        assert!(reduce_leftmost(&pat("11;00")).is_err());
    }

    #[test]
    fn column_scan() {
        assert_eq!(scan_letters(&pat("1010;0101")).unwrap(), vec![1, 2, 1, 2]);
        assert_eq!(scan_letters(&pat("101;011")).unwrap(), vec![1, 2, 1]);
        assert_eq!(scan_letters(&pat("11;11")).unwrap(), vec![1, 2]);
        assert_eq!(scan_letters(&pat("1110;0001")).unwrap(), vec![1, 1, 1, 2]);
        assert_eq!(scan_letters(&pat("0101;1010")).unwrap(), vec![2, 1, 2, 1]);
        assert_eq!(scan_reduction(&pat("0101;1010")).unwrap().to_string(), "abab");
        assert!(scan_letters(&pat("101;001")).is_err());
    }

    #[test]
    fn symmetry_maps() {
        let p = pat("110;001");
        assert_eq!(p.transpose(), pat("10;10;01"));
        assert_eq!(p.reflect_rows(), pat("001;110"));
        assert_eq!(p.reflect_cols(), pat("011;100"));
        assert_eq!(p.rotate90(), pat("01;01;10"));
        assert_eq!(p.rotate90().rotate90().rotate90().rotate90(), p);
    }
}
