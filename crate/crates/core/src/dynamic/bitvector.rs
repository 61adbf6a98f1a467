use crate::error::{invalid, Result};
use crate::wavelet::{select_in_word, InsertBits, RankSelect};

const WORDS: usize = 32;
const CAPACITY: usize = WORDS * 64;

/// Up to `CAPACITY` bits with the number of ones before each word.
#[derive(Debug, Clone)]
struct Block {
    words: [u64; WORDS],
    cum: [u16; WORDS],
    len: usize,
}

impl Block {
    fn empty() -> Self {
        Self { words: [0; WORDS], cum: [0; WORDS], len: 0 }
    }

    fn recount(&mut self) {
        let mut c = 0u16;
        for j in 0..WORDS {
            self.cum[j] = c;
            c += self.words[j].count_ones() as u16;
        }
    }

    fn ones(&self) -> usize {
        self.cum[WORDS - 1] as usize + self.words[WORDS - 1].count_ones() as usize
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn rank1(&self, i: usize) -> usize {
        let w = i / 64;
        let r = self.cum[w] as usize;
        if i.is_multiple_of(64) {
            r
        } else {
            r + (self.words[w] & ((1u64 << (i % 64)) - 1)).count_ones() as usize
        }
    }

    /// Position of the `k`-th one (or zero).
    fn select(&self, k: usize, ones: bool) -> usize {
        let before = |j: usize| if ones { self.cum[j] as usize } else { 64 * j - self.cum[j] as usize };
        let (mut lo, mut hi) = (0, WORDS - 1);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if before(mid) <= k {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let w = if ones { self.words[lo] } else { !self.words[lo] };
        lo * 64 + select_in_word(w, (k - before(lo)) as u32) as usize
    }

    fn insert(&mut self, i: usize, bit: bool) {
        debug_assert!(self.len < CAPACITY && i <= self.len);
        let w = i / 64;
        let last = (self.len / 64).min(WORDS - 1);
        for j in (w + 1..=last).rev() {
            let carry = self.words[j - 1] >> 63;
            self.cum[j] = self.cum[j] - carry as u16 + bit as u16;
            self.words[j] = (self.words[j] << 1) | carry;
        }
        if bit {
            for j in last + 1..WORDS {
                self.cum[j] += 1;
            }
        }
        let b = i % 64;
        let mask = if b == 0 { 0 } else { (1u64 << b) - 1 };
        let word = self.words[w];
        self.words[w] = (word & mask) | ((word & !mask) << 1) | ((bit as u64) << b);
        self.len += 1;
    }

    fn set(&mut self, i: usize, bit: bool) {
        let w = i / 64;
        if bit {
            self.words[w] |= 1 << (i % 64);
            self.cum[w + 1..].iter_mut().for_each(|c| *c += 1);
        } else {
            self.words[w] &= !(1 << (i % 64));
            self.cum[w + 1..].iter_mut().for_each(|c| *c -= 1);
        }
    }

    /// Moves the upper half into a new block.
    fn split(&mut self) -> Block {
        let half = self.len / 2;
        debug_assert_eq!(half % 64, 0);
        let mut right = Block::empty();
        let hw = half / 64;
        right.words[..WORDS - hw].copy_from_slice(&self.words[hw..]);
        right.len = self.len - half;
        self.words[hw..].iter_mut().for_each(|w| *w = 0);
        self.len = half;
        self.recount();
        right.recount();
        right
    }
}

/// A dynamic bit vector: fixed-capacity blocks with cumulative length and
/// one counts per block.
///
/// Queries binary-search the cumulative arrays; an insertion bumps the
/// entries after its block, which is cheap next to the query load of the
/// parsers.
#[derive(Debug, Clone)]
pub struct DynBitVector {
    blocks: Vec<Block>,
    /// Bits before each block.
    starts: Vec<u32>,
    /// Ones before each block.
    ones_before: Vec<u32>,
    len: usize,
    ones: usize,
}

impl Default for DynBitVector {
    fn default() -> Self {
        Self::new()
    }
}

/// Last index `j` in `0..n` with `key(j) <= x`, assuming `key(0) <= x` and
/// `key` nondecreasing.
#[inline]
fn last_not_above(n: usize, x: usize, key: impl Fn(usize) -> usize) -> usize {
    let (mut base, mut size) = (0, n);
    while size > 1 {
        let half = size / 2;
        let mid = base + half;
        base = if key(mid) <= x { mid } else { base };
        size -= half;
    }
    base
}

impl DynBitVector {
    pub fn new() -> Self {
        Self { blocks: vec![Block::empty()], starts: vec![0], ones_before: vec![0], len: 0, ones: 0 }
    }

    /// `n` copies of `bit`.
    pub fn filled(n: usize, bit: bool) -> Self {
        let mut blocks = Vec::new();
        let half = CAPACITY / 2;
        let mut left = n;
        while left > 0 || blocks.is_empty() {
            let take = left.min(half);
            let mut b = Block::empty();
            if bit {
                for i in 0..take {
                    b.words[i / 64] |= 1 << (i % 64);
                }
                b.recount();
            }
            b.len = take;
            blocks.push(b);
            left -= take;
        }
        let mut v = Self { blocks, starts: vec![], ones_before: vec![], len: n, ones: if bit { n } else { 0 } };
        v.rebuild_index();
        v
    }

    fn rebuild_index(&mut self) {
        self.starts.clear();
        self.ones_before.clear();
        let (mut l, mut o) = (0u32, 0u32);
        for b in &self.blocks {
            self.starts.push(l);
            self.ones_before.push(o);
            l += b.len as u32;
            o += b.ones() as u32;
        }
    }

    /// Block holding position `i` and the offset inside it. `i == len`
    /// resolves to the end of the last block.
    #[inline]
    fn locate(&self, i: usize) -> (usize, usize) {
        let starts = &self.starts;
        let b = last_not_above(starts.len(), i, |j| starts[j] as usize);
        // a block starting exactly at `i` after empty predecessors is fine: only
        // the first block can be empty
        (b, i - starts[b] as usize)
    }

    pub fn try_get(&self, i: usize) -> Result<bool> {
        if i >= self.len {
            return Err(invalid(format!("position {i} out of bounds for length {}", self.len)));
        }
        Ok(self.get(i))
    }

    pub fn try_insert(&mut self, i: usize, bit: bool) -> Result<()> {
        if i > self.len {
            return Err(invalid(format!("insert position {i} out of bounds for length {}", self.len)));
        }
        self.insert(i, bit);
        Ok(())
    }

    pub fn try_rank1(&self, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(invalid(format!("rank position {i} out of bounds for length {}", self.len)));
        }
        Ok(self.rank1(i))
    }

    pub fn try_select1(&self, k: usize) -> Result<usize> {
        if k >= self.ones {
            return Err(invalid(format!("select1({k}) with only {} ones", self.ones)));
        }
        Ok(self.select1(k))
    }

    /// Overwrites the bit at `i`.
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "set out of bounds");
        let (b, off) = self.locate(i);
        if self.blocks[b].get(off) != bit {
            self.blocks[b].set(off, bit);
            if bit {
                self.ones_before[b + 1..].iter_mut().for_each(|x| *x += 1);
                self.ones += 1;
            } else {
                self.ones_before[b + 1..].iter_mut().for_each(|x| *x -= 1);
                self.ones -= 1;
            }
        }
    }
}

impl RankSelect for DynBitVector {
    fn len(&self) -> usize {
        self.len
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "get out of bounds");
        let (b, off) = self.locate(i);
        self.blocks[b].get(off)
    }

    #[inline]
    fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.len, "rank out of bounds");
        if i == self.len {
            return self.ones;
        }
        let (b, off) = self.locate(i);
        self.ones_before[b] as usize + self.blocks[b].rank1(off)
    }

    fn select1(&self, k: usize) -> usize {
        assert!(k < self.ones, "select1 out of range");
        let ob = &self.ones_before;
        let b = last_not_above(ob.len(), k, |j| ob[j] as usize);
        self.starts[b] as usize + self.blocks[b].select(k - ob[b] as usize, true)
    }

    fn select0(&self, k: usize) -> usize {
        assert!(k < self.len - self.ones, "select0 out of range");
        let (st, ob) = (&self.starts, &self.ones_before);
        let b = last_not_above(st.len(), k, |j| (st[j] - ob[j]) as usize);
        let zeros_before = (st[b] - ob[b]) as usize;
        st[b] as usize + self.blocks[b].select(k - zeros_before, false)
    }

    fn count_ones(&self) -> usize {
        self.ones
    }
}

impl InsertBits for DynBitVector {
    fn insert(&mut self, i: usize, bit: bool) {
        assert!(i <= self.len, "insert out of bounds");
        let (b, off) = self.locate(i);
        self.blocks[b].insert(off, bit);
        self.len += 1;
        self.ones += bit as usize;
        self.starts[b + 1..].iter_mut().for_each(|x| *x += 1);
        if bit {
            self.ones_before[b + 1..].iter_mut().for_each(|x| *x += 1);
        }
        if self.blocks[b].len == CAPACITY {
            let right = self.blocks[b].split();
            let (start, ones) = (self.starts[b] + (CAPACITY / 2) as u32, self.ones_before[b] + self.blocks[b].ones() as u32);
            self.blocks.insert(b + 1, right);
            self.starts.insert(b + 1, start);
            self.ones_before.insert(b + 1, ones);
        }
    }
}
