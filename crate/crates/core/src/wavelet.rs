//! Wavelet matrices over any rank/select bit vector.
//!
//! The same query code serves the static structures of [`crate::suffix`] and
//! the dynamic sequences of [`crate::dynamic`].

use std::ops::Range;

/// Rank/select over a bit sequence. Ranks count in `[0, i)`; selects are 0-based.
pub trait RankSelect {
    fn len(&self) -> usize;
    fn get(&self, i: usize) -> bool;
    fn rank1(&self, i: usize) -> usize;
    fn select1(&self, k: usize) -> usize;
    fn select0(&self, k: usize) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    fn count_ones(&self) -> usize {
        self.rank1(self.len())
    }
}

/// Bit vectors that accept insertions.
pub trait InsertBits: RankSelect {
    fn insert(&mut self, i: usize, bit: bool);
}

/// Position of the `k`-th (0-based) set bit of `w`.
#[inline]
pub(crate) fn select_in_word(mut w: u64, k: u32) -> u32 {
    for _ in 0..k {
        w &= w - 1;
    }
    w.trailing_zeros()
}

/// Immutable bit vector with one cumulative count per 64-bit word.
#[derive(Debug, Clone, Default)]
pub struct StaticBitVector {
    words: Vec<u64>,
    ranks: Vec<usize>,
    len: usize,
}

impl StaticBitVector {
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0u64);
            }
            if b {
                *words.last_mut().unwrap() |= 1 << (len % 64);
            }
            len += 1;
        }
        let mut ranks = Vec::with_capacity(words.len() + 1);
        let mut acc = 0;
        for w in &words {
            ranks.push(acc);
            acc += w.count_ones() as usize;
        }
        ranks.push(acc);
        Self { words, ranks, len }
    }

    fn select_by<F: Fn(usize) -> usize, G: Fn(u64) -> u64>(&self, k: usize, before: F, word: G) -> usize {
        // last word whose preceding count is <= k
        let (mut lo, mut hi) = (0, self.words.len());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if before(mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo * 64 + select_in_word(word(self.words[lo]), (k - before(lo)) as u32) as usize
    }
}

impl RankSelect for StaticBitVector {
    fn len(&self) -> usize {
        self.len
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn rank1(&self, i: usize) -> usize {
        let w = i / 64;
        let r = i % 64;
        if r == 0 {
            self.ranks[w]
        } else {
            self.ranks[w] + (self.words[w] & ((1u64 << r) - 1)).count_ones() as usize
        }
    }

    fn select1(&self, k: usize) -> usize {
        assert!(k < self.count_ones(), "select1 out of range");
        self.select_by(k, |w| self.ranks[w], |x| x)
    }

    fn select0(&self, k: usize) -> usize {
        assert!(k < self.len - self.count_ones(), "select0 out of range");
        // padding bits in the last word are zero but lie past `len`; the
        // bound check above keeps the answer inside the vector.
        self.select_by(k, |w| w * 64 - self.ranks[w], |x| !x)
    }
}

/// A wavelet matrix over `width`-bit values.
/// Start positions, per level, of the values sharing a bound's high bits.
#[derive(Debug, Clone)]
pub struct LessProbe {
    bound: u64,
    all: bool,
    starts: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Default)]
pub struct WaveletMatrix<B> {
    levels: Vec<B>,
    zeros: Vec<usize>,
    width: u32,
    len: usize,
}

/// Number of bits needed to store every value in `[0, bound)`; at least one.
pub fn width_for(bound: u64) -> u32 {
    if bound <= 2 {
        1
    } else {
        64 - (bound - 1).leading_zeros()
    }
}

impl WaveletMatrix<StaticBitVector> {
    /// Builds a static matrix; every value must be below `2^width`.
    pub fn build(values: &[u64], width: u32) -> Self {
        assert!(width == 64 || values.iter().all(|&v| v < 1u64 << width), "value too wide");
        let mut cur = values.to_vec();
        let mut levels = Vec::with_capacity(width as usize);
        let mut zeros = Vec::with_capacity(width as usize);
        for lvl in (0..width).rev() {
            let bv = StaticBitVector::from_bits(cur.iter().map(|&v| v >> lvl & 1 == 1));
            let (mut z, mut o): (Vec<u64>, Vec<u64>) = (Vec::new(), Vec::new());
            for &v in &cur {
                if v >> lvl & 1 == 1 {
                    o.push(v)
                } else {
                    z.push(v)
                }
            }
            zeros.push(z.len());
            z.extend(o);
            cur = z;
            levels.push(bv);
        }
        Self { levels, zeros, width, len: values.len() }
    }
}

impl<B: InsertBits + Default> WaveletMatrix<B> {
    pub fn empty(width: u32) -> Self {
        Self {
            levels: (0..width).map(|_| B::default()).collect(),
            zeros: vec![0; width as usize],
            width,
            len: 0,
        }
    }

    /// Inserts `value` before position `i` (`i <= len`).
    pub fn insert(&mut self, mut i: usize, value: u64) {
        assert!(i <= self.len, "insert position out of bounds");
        assert!(self.width == 64 || value < 1u64 << self.width, "value too wide");
        for (d, level) in self.levels.iter_mut().enumerate() {
            let bit = value >> (self.width - 1 - d as u32) & 1 == 1;
            level.insert(i, bit);
            if bit {
                i = self.zeros[d] + level.rank1(i);
            } else {
                self.zeros[d] += 1;
                i = level.rank0(i);
            }
        }
        self.len += 1;
    }
}

impl<B: RankSelect> WaveletMatrix<B> {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    fn bit(&self, value: u64, depth: usize) -> bool {
        value >> (self.width - 1 - depth as u32) & 1 == 1
    }

    fn fits(&self, value: u64) -> bool {
        self.width == 64 || value < 1u64 << self.width
    }

    pub fn access(&self, mut i: usize) -> u64 {
        assert!(i < self.len, "access out of bounds");
        let mut v = 0u64;
        for (d, level) in self.levels.iter().enumerate() {
            let bit = level.get(i);
            v = (v << 1) | bit as u64;
            i = if bit { self.zeros[d] + level.rank1(i) } else { level.rank0(i) };
        }
        v
    }

    /// Occurrences of `value` in `[0, i)`.
    pub fn rank(&self, value: u64, i: usize) -> usize {
        assert!(i <= self.len, "rank out of bounds");
        if !self.fits(value) {
            return 0;
        }
        let (mut s, mut e) = (0, i);
        for (d, level) in self.levels.iter().enumerate() {
            if self.bit(value, d) {
                s = self.zeros[d] + level.rank1(s);
                e = self.zeros[d] + level.rank1(e);
            } else {
                s = level.rank0(s);
                e = level.rank0(e);
            }
        }
        e - s
    }

    /// Position of the `k`-th (0-based) occurrence of `value`.
    pub fn select(&self, value: u64, k: usize) -> Option<usize> {
        if !self.fits(value) {
            return None;
        }
        let mut s = 0;
        let mut e = self.len;
        for (d, level) in self.levels.iter().enumerate() {
            if self.bit(value, d) {
                s = self.zeros[d] + level.rank1(s);
                e = self.zeros[d] + level.rank1(e);
            } else {
                s = level.rank0(s);
                e = level.rank0(e);
            }
        }
        if k >= e - s {
            return None;
        }
        let mut pos = s + k;
        for (d, level) in self.levels.iter().enumerate().rev() {
            pos = if self.bit(value, d) {
                level.select1(pos - self.zeros[d])
            } else {
                level.select0(pos)
            };
        }
        Some(pos)
    }

    /// Number of values strictly below `value` within `range`.
    pub fn count_less(&self, range: Range<usize>, value: u64) -> usize {
        let (mut s, mut e) = (range.start, range.end);
        assert!(s <= e && e <= self.len, "range out of bounds");
        if !self.fits(value) {
            return e - s;
        }
        let mut count = 0;
        for (d, level) in self.levels.iter().enumerate() {
            if s == e {
                break;
            }
            let (s1, e1) = (level.rank1(s), level.rank1(e));
            if self.bit(value, d) {
                count += (e - s) - (e1 - s1);
                s = self.zeros[d] + s1;
                e = self.zeros[d] + e1;
            } else {
                s -= s1;
                e -= e1;
            }
        }
        count
    }

    /// Precomputes the descent of `bound` so that [`Self::prefix_less`]
    /// costs one rank per level.
    pub fn less_probe(&self, bound: u64) -> LessProbe {
        if !self.fits(bound) {
            return LessProbe { bound, all: true, starts: Vec::new() };
        }
        let mut starts = Vec::with_capacity(self.levels.len());
        let mut s = 0;
        for (d, level) in self.levels.iter().enumerate() {
            let s1 = level.rank1(s);
            starts.push((s, s1));
            s = if self.bit(bound, d) { self.zeros[d] + s1 } else { s - s1 };
        }
        LessProbe { bound, all: false, starts }
    }

    /// Number of values below the probe's bound within `[0, x)`.
    pub fn prefix_less(&self, probe: &LessProbe, x: usize) -> usize {
        assert!(x <= self.len, "prefix out of bounds");
        if probe.all {
            return x;
        }
        let mut e = x;
        let mut count = 0;
        for (d, level) in self.levels.iter().enumerate() {
            let (s, s1) = probe.starts[d];
            if e == s {
                break;
            }
            let e1 = level.rank1(e);
            if self.bit(probe.bound, d) {
                count += (e - s) - (e1 - s1);
                e = self.zeros[d] + e1;
            } else {
                e -= e1;
            }
        }
        count
    }

    /// The `k`-th smallest (0-based) value within `range`.
    pub fn kth_smallest(&self, range: Range<usize>, mut k: usize) -> u64 {
        let (mut s, mut e) = (range.start, range.end);
        assert!(s <= e && e <= self.len && k < e - s, "kth_smallest out of range");
        let mut v = 0u64;
        for (d, level) in self.levels.iter().enumerate() {
            let (s1, e1) = (level.rank1(s), level.rank1(e));
            let zeros_in = (e - s) - (e1 - s1);
            if k < zeros_in {
                v <<= 1;
                s -= s1;
                e -= e1;
            } else {
                k -= zeros_in;
                v = (v << 1) | 1;
                s = self.zeros[d] + s1;
                e = self.zeros[d] + e1;
            }
        }
        v
    }

    fn witness(&self, range: &Range<usize>, value: u64) -> usize {
        self.first_in(range.clone(), value).expect("value occurs in range")
    }

    /// First index in `range` holding `value`.
    pub fn first_in(&self, range: Range<usize>, value: u64) -> Option<usize> {
        let before = self.rank(value, range.start);
        self.select(value, before).filter(|&i| i < range.end)
    }

    /// Largest value `< value` within `range`, with the first index holding it.
    pub fn range_pred(&self, range: Range<usize>, value: u64) -> Option<(usize, u64)> {
        let below = self.count_less(range.clone(), value);
        if below == 0 {
            return None;
        }
        let v = self.kth_smallest(range.clone(), below - 1);
        Some((self.witness(&range, v), v))
    }

    /// Smallest value `> value` within `range`, with the first index holding it.
    pub fn range_succ(&self, range: Range<usize>, value: u64) -> Option<(usize, u64)> {
        let not_above = match value.checked_add(1) {
            Some(v1) => self.count_less(range.clone(), v1),
            None => range.len(),
        };
        if not_above == range.len() {
            return None;
        }
        let v = self.kth_smallest(range.clone(), not_above);
        Some((self.witness(&range, v), v))
    }

    /// Both neighbours of `value` in `range` without witnesses.
    pub fn range_neighbours(&self, range: Range<usize>, value: u64) -> (Option<u64>, Option<u64>) {
        let below = self.count_less(range.clone(), value);
        let not_above = match value.checked_add(1) {
            Some(v1) => self.count_less(range.clone(), v1),
            None => range.len(),
        };
        let pred = (below > 0).then(|| self.kth_smallest(range.clone(), below - 1));
        let succ = (not_above < range.len()).then(|| self.kth_smallest(range.clone(), not_above));
        (pred, succ)
    }
}

/// The static wavelet tree used by the suffix toolkit.
pub type StaticWaveletTree = WaveletMatrix<StaticBitVector>;
