use std::ops::Range;

use super::sequence::DynSequence;
use crate::error::{invalid, Result};
use crate::text::MAX_SIGMA;

/// Fenwick tree of per-symbol counts.
#[derive(Debug, Clone)]
struct SymbolCounts {
    tree: Vec<usize>,
}

impl SymbolCounts {
    fn new(sigma: usize) -> Self {
        Self { tree: vec![0; sigma + 1] }
    }

    fn add(&mut self, c: usize) {
        let mut i = c + 1;
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Number of symbols `< c`.
    fn below(&self, c: usize) -> usize {
        let (mut i, mut s) = (c, 0);
        while i > 0 {
            s += self.tree[i];
            i &= i - 1;
        }
        s
    }

    /// The symbol `c` with `below(c) <= k < below(c + 1)`, and `below(c)`.
    fn find(&self, k: usize) -> (usize, usize) {
        let n = self.tree.len() - 1;
        let (mut pos, mut acc) = (0, 0);
        let mut step = if n == 0 { 0 } else { 1 << (usize::BITS - 1 - n.leading_zeros()) };
        while step > 0 {
            let next = pos + step;
            if next <= n && acc + self.tree[next] <= k {
                pos = next;
                acc += self.tree[next];
            }
            step >>= 1;
        }
        (pos, acc)
    }
}

/// Dynamic BWT of `R = reverse(P)·$` for a growing prefix `P` of `T'`.
///
/// Row `i` holds the `i`-th prefix of `P` in colex order, row 0 being the
/// empty prefix; its BWT symbol is the symbol following that prefix. The `$`
/// sits at `dollar_row`, the row of `P` itself, and is kept out of `seq`.
/// Rows are 0-based; [`DynBwt::colex_rank`] gives the 1-based rank.
#[derive(Debug, Clone)]
pub struct DynBwt {
    seq: DynSequence,
    counts: SymbolCounts,
    dollar: usize,
}

impl DynBwt {
    /// Indexes only the empty prefix.
    pub fn empty(sigma: usize) -> Result<Self> {
        if sigma == 0 || sigma > MAX_SIGMA {
            return Err(invalid(format!("alphabet size {sigma} outside [1, {MAX_SIGMA}]")));
        }
        Ok(Self { seq: DynSequence::new(sigma), counts: SymbolCounts::new(sigma), dollar: 0 })
    }

    /// Indexes the virtual prefix `sigma-1, .., 0`.
    pub fn new(sigma: usize) -> Result<Self> {
        let mut b = Self::empty(sigma)?;
        for c in (0..sigma).rev() {
            b.extend_unchecked(c);
        }
        Ok(b)
    }

    pub fn sigma(&self) -> usize {
        self.seq.sigma()
    }

    /// Number of rows, one per indexed prefix including the empty one.
    pub fn rows(&self) -> usize {
        self.seq.len() + 1
    }

    /// Length of the indexed prefix.
    pub fn indexed_len(&self) -> usize {
        self.seq.len()
    }

    pub fn dollar_row(&self) -> usize {
        self.dollar
    }

    /// 1-based colex rank of the full indexed prefix.
    pub fn colex_rank(&self) -> usize {
        self.dollar + 1
    }

    /// First row whose prefix ends with `c`.
    #[inline]
    pub fn c_start(&self, c: usize) -> usize {
        1 + self.counts.below(c)
    }

    /// BWT symbol of `row`; `None` for the `$`.
    pub fn symbol_at(&self, row: usize) -> Result<Option<usize>> {
        self.check_row(row)?;
        Ok(self.symbol_unchecked(row))
    }

    #[inline]
    pub(crate) fn symbol_unchecked(&self, row: usize) -> Option<usize> {
        match row.cmp(&self.dollar) {
            std::cmp::Ordering::Less => Some(self.seq.access_unchecked(row)),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(self.seq.access_unchecked(row - 1)),
        }
    }

    /// The whole BWT column, `$` as `None`.
    pub fn column(&self) -> Vec<Option<usize>> {
        (0..self.rows()).map(|r| self.symbol_unchecked(r)).collect()
    }

    /// Occurrences of `c` in BWT rows `[0, row)`.
    #[inline]
    fn rank_rows(&self, c: usize, row: usize) -> usize {
        self.seq.rank_unchecked(c, if row > self.dollar { row - 1 } else { row })
    }

    fn check_row(&self, row: usize) -> Result<()> {
        if row >= self.rows() {
            return Err(invalid(format!("row {row} out of bounds for {} rows", self.rows())));
        }
        Ok(())
    }

    fn check_symbol(&self, c: usize) -> Result<()> {
        if c >= self.sigma() {
            return Err(invalid(format!("symbol {c} outside alphabet of size {}", self.sigma())));
        }
        Ok(())
    }

    /// Appends `c` to the indexed prefix and returns the new `$` row.
    pub fn extend(&mut self, c: usize) -> Result<usize> {
        self.check_symbol(c)?;
        Ok(self.extend_unchecked(c))
    }

    pub(crate) fn extend_unchecked(&mut self, c: usize) -> usize {
        let row = self.c_start(c) + self.seq.rank_unchecked(c, self.dollar);
        self.seq.insert_unchecked(self.dollar, c);
        self.counts.add(c);
        self.dollar = row;
        row
    }

    /// Rows of the prefixes formed by a prefix in `range` followed by `c`;
    /// both ranges are half-open. `None` when empty.
    pub fn backward_step(&self, range: Range<usize>, c: usize) -> Option<Range<usize>> {
        if c >= self.sigma() || range.start >= range.end || range.end > self.rows() {
            return None;
        }
        let base = self.c_start(c);
        let lo = base + self.rank_rows(c, range.start);
        let hi = base + self.rank_rows(c, range.end);
        (lo < hi).then_some(lo..hi)
    }

    /// Row of the prefix one symbol longer than the prefix at `row`.
    pub fn lf(&self, row: usize) -> Result<usize> {
        self.check_row(row)?;
        if row == self.dollar {
            return Err(invalid("lf is undefined at the $ row"));
        }
        Ok(self.lf_unchecked(row))
    }

    #[inline]
    pub(crate) fn lf_unchecked(&self, row: usize) -> usize {
        let c = self.symbol_unchecked(row).expect("row is not the $ row");
        self.c_start(c) + self.rank_rows(c, row)
    }

    /// Row of the prefix one symbol shorter than the prefix at `row`.
    pub fn fl(&self, row: usize) -> Result<usize> {
        self.check_row(row)?;
        if row == 0 {
            return Err(invalid("fl is undefined at the empty prefix"));
        }
        Ok(self.fl_unchecked(row))
    }

    #[inline]
    pub(crate) fn fl_unchecked(&self, row: usize) -> usize {
        let (c, below) = self.counts.find(row - 1);
        let pos = self.seq.select_unchecked(c, row - 1 - below);
        if pos >= self.dollar {
            pos + 1
        } else {
            pos
        }
    }
}
