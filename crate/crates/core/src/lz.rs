//! Greedy LZ parsing with textual offsets.

use crate::error::{corrupt, invalid, Result};
use crate::suffix::{PsvNsv, StaticWaveletTree, SuffixIndex};
use crate::text::Text;
use crate::wavelet::width_for;

/// A phrase: copy `len` symbols from `off` units back.
///
/// Textual offsets count positions in `T'` and are always positive; colex
/// offsets count rows of the prefix order and may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub off: i64,
    pub len: usize,
}

impl Factor {
    pub fn new(off: i64, len: usize) -> Self {
        Self { off, len }
    }
}

/// How the offsets of a parsing are interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    Textual,
    Colex,
}

/// A factorization of a body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsing {
    pub factors: Vec<Factor>,
    pub semantics: Semantics,
}

impl Parsing {
    pub fn new(factors: Vec<Factor>, semantics: Semantics) -> Self {
        Self { factors, semantics }
    }

    /// Number of factors.
    pub fn z(&self) -> usize {
        self.factors.len()
    }

    /// Total length covered.
    pub fn n(&self) -> usize {
        self.factors.iter().map(|f| f.len).sum()
    }

    /// `(off, len)` pairs.
    pub fn pairs(&self) -> Vec<(i64, usize)> {
        self.factors.iter().map(|f| (f.off, f.len)).collect()
    }
}

/// Per-position greedy lengths and their PSV/NSV sources, walked factor by factor.
fn nsvpsv_walk(text: &Text, idx: &SuffixIndex, mut emit: impl FnMut(usize, usize, usize)) {
    let full = text.full();
    let ps = PsvNsv::build(idx);
    let mut k = text.sigma();
    while k < full.len() {
        let i = idx.isa(k);
        let mut best: Option<(usize, usize)> = None;
        for s in [ps.psv(i), ps.nsv(i)].into_iter().flatten().map(|j| idx.sa(j)) {
            let l = idx.lce(k, s);
            best = match best {
                Some((bl, bs)) if bl > l || (bl == l && bs > s) => Some((bl, bs)),
                _ => Some((l, s)),
            };
        }
        let (len, src) = best.expect("every symbol occurs in the virtual prefix");
        debug_assert!(len >= 1);
        emit(k, len, src);
        k += len;
    }
}

/// Greedy parse choosing, among the PSV and NSV suffixes, the one with the
/// longer common extension (ties to the larger source position).
pub fn greedy_parse_nsvpsv(text: &Text) -> Parsing {
    let idx = SuffixIndex::build(text.full());
    let mut factors = Vec::new();
    nsvpsv_walk(text, &idx, |k, len, src| factors.push(Factor::new((k - src) as i64, len)));
    Parsing::new(factors, Semantics::Textual)
}

/// Greedy parse taking for every factor its closest previous occurrence.
pub fn greedy_parse_rightmost(text: &Text) -> Parsing {
    let idx = SuffixIndex::build(text.full());
    let sa: Vec<u64> = idx.sa_slice().iter().map(|&x| x as u64).collect();
    let wt = StaticWaveletTree::build(&sa, width_for(sa.len() as u64));
    let mut factors = Vec::new();
    nsvpsv_walk(text, &idx, |k, len, _| {
        let (l, r) = idx.lcp_interval(k, len);
        let (_, src) = wt.range_pred(l..r + 1, k as u64).expect("greedy factor has an earlier occurrence");
        factors.push(Factor::new((k as u64 - src) as i64, len));
    });
    Parsing::new(factors, Semantics::Textual)
}

/// Rebuilds the body of a textual parsing.
pub fn decode_text(parsing: &Parsing, sigma: usize) -> Result<Text> {
    if parsing.semantics != Semantics::Textual {
        return Err(invalid("decode_text needs textual offsets"));
    }
    let empty = Text::from_symbols(&[], sigma)?;
    let mut full = empty.full().to_vec();
    for f in &parsing.factors {
        let k = full.len();
        if f.len == 0 {
            return Err(corrupt("zero-length factor"));
        }
        if f.off < 1 || f.off as u64 > k as u64 {
            return Err(corrupt(format!("offset {} out of range at position {}", f.off, k)));
        }
        let src = k - f.off as usize;
        for j in 0..f.len {
            let c = full[src + j];
            full.push(c);
        }
    }
    Text::from_symbols(&full[sigma..], sigma)
}

/// Which source the quadratic oracle reports among those of maximal length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleTie {
    Rightmost,
    Leftmost,
}

/// Quadratic greedy parse by direct comparison.
pub fn oracle_greedy_parse(text: &Text, tie: OracleTie) -> Parsing {
    let full = text.full();
    let mut factors = Vec::new();
    let mut k = text.sigma();
    while k < full.len() {
        let mut best = (0, 0);
        for s in 0..k {
            let l = full[s..].iter().zip(&full[k..]).take_while(|(a, b)| a == b).count();
            if l > best.0 || (l == best.0 && tie == OracleTie::Rightmost) {
                best = (l, s);
            }
        }
        factors.push(Factor::new((k - best.1) as i64, best.0));
        k += best.0;
    }
    Parsing::new(factors, Semantics::Textual)
}
