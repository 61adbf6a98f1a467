//! Static text indexing: suffix array, inverse, LCP with range-minimum LCE,
//! PSV/NSV arrays, BWT run counting and the static wavelet tree.

mod bwt;
mod psv;

pub use bwt::{static_bwt_runs, StaticBwt};
pub use psv::PsvNsv;

pub use crate::wavelet::StaticWaveletTree;

/// Suffix array of a byte text with an implicit terminator.
///
/// The terminator is the smallest symbol, so `sa[0]` is always the empty
/// suffix starting at `text.len()`. All arrays have `text.len() + 1` entries.
#[derive(Debug, Clone)]
pub struct SuffixIndex {
    len: usize,
    sa: Vec<u32>,
    isa: Vec<u32>,
    lcp: Vec<u32>,
    rmq: Rmq,
}

/// Suffix array including the terminator row.
pub fn suffix_array(text: &[u8]) -> Vec<u32> {
    assert!(text.len() < i32::MAX as usize, "text too long for 32-bit suffix array");
    let mut sa = vec![0i32; text.len()];
    if !text.is_empty() {
        divsufsort::sort_in_place(text, &mut sa);
    }
    std::iter::once(text.len() as u32).chain(sa.into_iter().map(|x| x as u32)).collect()
}

impl SuffixIndex {
    pub fn build(text: &[u8]) -> Self {
        let sa = suffix_array(text);
        let mut isa = vec![0u32; sa.len()];
        for (i, &s) in sa.iter().enumerate() {
            isa[s as usize] = i as u32;
        }
        let lcp = kasai(text, &sa, &isa);
        let rmq = Rmq::new(&lcp);
        Self { len: text.len(), sa, isa, lcp, rmq }
    }

    /// Length of the indexed text (excluding the terminator).
    pub fn text_len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn sa(&self, i: usize) -> usize {
        self.sa[i] as usize
    }

    #[inline]
    pub fn isa(&self, pos: usize) -> usize {
        self.isa[pos] as usize
    }

    pub fn sa_slice(&self) -> &[u32] {
        &self.sa
    }

    pub fn isa_slice(&self) -> &[u32] {
        &self.isa
    }

    /// `lcp[i]` is the common prefix length of suffixes `sa[i-1]` and `sa[i]`; `lcp[0] = 0`.
    pub fn lcp(&self, i: usize) -> usize {
        self.lcp[i] as usize
    }

    /// Longest common extension of the suffixes starting at `i` and `j`.
    #[inline]
    pub fn lce(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.len - i;
        }
        let (a, b) = (self.isa(i), self.isa(j));
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.rmq.min(&self.lcp, a + 1, b) as usize
    }

    /// Minimum of `lcp[a..=b]`.
    pub fn lcp_min(&self, a: usize, b: usize) -> usize {
        self.rmq.min(&self.lcp, a, b) as usize
    }

    /// The suffix-array interval of suffixes sharing at least `len` symbols
    /// with the suffix at `pos`.
    pub fn lcp_interval(&self, pos: usize, len: usize) -> (usize, usize) {
        let k = self.isa(pos);
        // lce with sa[k] is non-increasing moving away from k on either side
        let (mut lo, mut hi) = (0, k);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.lcp_min(mid + 1, k) >= len {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let left = lo;
        let (mut lo, mut hi) = (k, self.sa.len() - 1);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.lcp_min(k + 1, mid) >= len {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        (left, lo)
    }
}

fn kasai(text: &[u8], sa: &[u32], isa: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut lcp = vec![0u32; sa.len()];
    let mut h = 0usize;
    for pos in 0..n {
        let r = isa[pos] as usize;
        // r >= 1 because row 0 is the terminator
        let prev = sa[r - 1] as usize;
        while pos + h < n && prev + h < n && text[pos + h] == text[prev + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

const RMQ_BLOCK: usize = 32;

/// Range minimum over `u32` values: in-block scans plus a sparse table over
/// block minima.
#[derive(Debug, Clone)]
pub struct Rmq {
    table: Vec<Vec<u32>>,
}

impl Rmq {
    pub fn new(values: &[u32]) -> Self {
        let blocks: Vec<u32> = values.chunks(RMQ_BLOCK).map(|c| *c.iter().min().unwrap()).collect();
        let mut table = vec![blocks];
        let mut span = 1;
        while 2 * span <= table[0].len() {
            let prev = table.last().unwrap();
            let next: Vec<u32> = (0..prev.len() - span).map(|i| prev[i].min(prev[i + span])).collect();
            table.push(next);
            span *= 2;
        }
        Self { table }
    }

    fn blocks_min(&self, a: usize, b: usize) -> u32 {
        let k = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
        self.table[k][a].min(self.table[k][b + 1 - (1 << k)])
    }

    /// Minimum of `values[a..=b]`; `values` must be the slice this was built on.
    pub fn min(&self, values: &[u32], a: usize, b: usize) -> u32 {
        debug_assert!(a <= b && b < values.len());
        let (ba, bb) = (a / RMQ_BLOCK, b / RMQ_BLOCK);
        if ba == bb {
            return *values[a..=b].iter().min().unwrap();
        }
        let mut m = values[a..(ba + 1) * RMQ_BLOCK].iter().chain(&values[bb * RMQ_BLOCK..=b]).copied().min().unwrap();
        if ba + 1 < bb {
            m = m.min(self.blocks_min(ba + 1, bb - 1));
        }
        m
    }
}
