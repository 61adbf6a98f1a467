use std::ops::Range;

use super::{Arc, CostModel};
use crate::dynamic::{DynBwt, DynWavelet};
use crate::error::Result;
use crate::suffix::{PsvNsv, StaticWaveletTree, SuffixIndex};
use crate::text::Text;
use crate::wavelet::{width_for, LessProbe};

/// Length of the longest previous factor at `k` in `T'`.
fn greedy_len(idx: &SuffixIndex, ps: &PsvNsv, k: usize) -> usize {
    let i = idx.isa(k);
    [ps.psv(i), ps.nsv(i)].into_iter().flatten().map(|j| idx.lce(k, idx.sa(j))).max().unwrap_or(0)
}

/// Text-offset arcs from static indexes: one windowed pred/succ query over
/// `isa` (indexed by text position) per offset class.
#[derive(Debug, Clone)]
pub struct TextArcGen {
    sigma: usize,
    idx: SuffixIndex,
    ps: PsvNsv,
    by_pos: StaticWaveletTree,
}

impl TextArcGen {
    pub fn new(text: &Text) -> Self {
        let idx = SuffixIndex::build(text.full());
        let ps = PsvNsv::build(&idx);
        let isa: Vec<u64> = idx.isa_slice().iter().map(|&x| x as u64).collect();
        let by_pos = StaticWaveletTree::build(&isa, width_for(isa.len() as u64));
        Self { sigma: text.sigma(), idx, ps, by_pos }
    }

    /// Maximal arcs at body index `i` (0-based), cheapest class first and
    /// strictly increasing in length.
    pub fn arcs(&self, i: usize, cost: &CostModel) -> Vec<Arc> {
        let k = self.sigma + i;
        let target = greedy_len(&self.idx, &self.ps, k);
        let v = self.idx.isa(k) as u64;
        let mut out = Vec::new();
        let mut longest = 0;
        for c in cost.offset_classes(k as u64) {
            let (lo, hi) = (c.lo as usize, c.hi as usize);
            let (pred, succ) = self.by_pos.range_neighbours(k - hi..k - lo + 1, v);
            let mut best: Option<(usize, usize)> = None;
            for u in [pred, succ].into_iter().flatten() {
                let s = self.idx.sa(u as usize);
                let l = self.idx.lce(k, s);
                if best.is_none_or(|(bl, bs)| l > bl || (l == bl && s > bs)) {
                    best = Some((l, s));
                }
            }
            if let Some((l, s)) = best {
                if l > longest {
                    longest = l;
                    out.push(Arc { from: i, off: (k - s) as i64, len: l });
                    if l >= target {
                        break;
                    }
                }
            }
        }
        out
    }
}

/// Arcs at body index `i` (0-based) for textual offsets.
pub fn gen_arcs_text(text: &Text, cost: &CostModel, i: usize) -> Vec<Arc> {
    TextArcGen::new(text).arcs(i, cost)
}

/// Rows whose suffix shares at least a given length with the current one
/// form a rank interval `[a, b]`; counts below `a` and below `b + 1` are
/// memoized per prefix end.
struct Gate {
    a: LessProbe,
    b: LessProbe,
    memo: [(usize, (usize, usize)); 4],
}

impl Gate {
    fn new(state: &ColexArcGenState, k: usize, len: usize) -> Self {
        let (a, b) = state.idx.lcp_interval(k, len);
        Self {
            a: state.rows.less_probe(a as u64),
            b: state.rows.less_probe(b as u64 + 1),
            memo: [(usize::MAX, (0, 0)); 4],
        }
    }

    /// Values in `[0, x)` below `a` and below `b + 1`.
    fn at(&mut self, state: &ColexArcGenState, x: usize) -> (usize, usize) {
        if let Some(&(_, c)) = self.memo.iter().find(|m| m.0 == x) {
            return c;
        }
        let c = (state.rows.prefix_less(&self.a, x), state.rows.prefix_less(&self.b, x));
        self.memo.rotate_right(1);
        self.memo[0] = (x, c);
        c
    }
}

/// Colex-offset arc generation over a growing BWT.
///
/// `rows` maps every BWT row to the lexicographic rank of the suffix that
/// starts where the row's prefix ends, so a row is a valid source for as
/// many symbols as that suffix shares with the current one.
#[derive(Debug, Clone)]
pub struct ColexArcGenState<'a> {
    full: &'a [u8],
    sigma: usize,
    idx: SuffixIndex,
    ps: PsvNsv,
    bwt: DynBwt,
    rows: DynWavelet,
    pos: usize,
}

impl<'a> ColexArcGenState<'a> {
    /// State positioned at body index 0.
    pub fn new(text: &'a Text) -> Result<Self> {
        let full = text.full();
        let idx = SuffixIndex::build(full);
        let ps = PsvNsv::build(&idx);
        let mut bwt = DynBwt::empty(text.sigma().max(1))?;
        let mut rows = DynWavelet::empty(width_for(full.len() as u64 + 1));
        rows.insert(0, idx.isa(0) as u64);
        for (j, &c) in full[..text.sigma()].iter().enumerate() {
            let d = bwt.extend_unchecked(c as usize);
            rows.insert(d, idx.isa(j + 1) as u64);
        }
        Ok(Self { full, sigma: text.sigma(), idx, ps, bwt, rows, pos: 0 })
    }

    /// Body index the state is synchronized to.
    pub fn position(&self) -> usize {
        self.pos
    }

    /// Maximal arcs at the current position, cheapest class first and
    /// strictly increasing in length.
    ///
    /// A window is only searched when it holds a row whose suffix shares more
    /// than the best length so far; that test is two prefix counts per window
    /// edge, and consecutive classes share edges.
    pub fn arcs(&self, cost: &CostModel) -> Vec<Arc> {
        let k = self.sigma + self.pos;
        let target = greedy_len(&self.idx, &self.ps, k);
        let v = self.idx.isa(k) as u64;
        let d = self.bwt.dollar_row();
        let last = self.bwt.rows() - 1;
        let below_v = self.rows.less_probe(v);
        let mut gate = Gate::new(self, k, 1);
        let mut out = Vec::new();
        for c in cost.offset_classes(d.max(last - d) as u64) {
            let (lo, hi) = (c.lo as usize, c.hi as usize);
            let left = (d >= lo).then(|| d - hi.min(d)..d - lo + 1);
            let right = (d + lo <= last).then(|| d + lo..(d + hi).min(last) + 1);
            let mut best: Option<(usize, u64, Range<usize>)> = None;
            for w in [left, right].into_iter().flatten() {
                let (s, e) = (gate.at(self, w.start), gate.at(self, w.end));
                if e.1 - e.0 == s.1 - s.0 {
                    continue;
                }
                let below = self.rows.prefix_less(&below_v, w.end) - self.rows.prefix_less(&below_v, w.start);
                // v itself never lies in a window
                let mut cands = Vec::with_capacity(2);
                if below > e.0 - s.0 {
                    cands.push(self.rows.kth_smallest(w.clone(), below - 1));
                }
                if e.1 - s.1 > below {
                    cands.push(self.rows.kth_smallest(w.clone(), below));
                }
                for u in cands {
                    let l = self.idx.lce(k, self.idx.sa(u as usize));
                    // left windows come first, so ties keep positive offsets
                    if best.as_ref().is_none_or(|b| l > b.0) {
                        best = Some((l, u, w.clone()));
                    }
                }
            }
            if let Some((l, u, w)) = best {
                let row = self.rows.first_in(w, u).expect("value found in window");
                out.push(Arc { from: self.pos, off: d as i64 - row as i64, len: l });
                if l >= target {
                    break;
                }
                gate = Gate::new(self, k, l + 1);
            }
        }
        out
    }

    /// Indexes the symbol at the current position and moves past it.
    pub fn advance(&mut self) {
        let k = self.sigma + self.pos;
        let d = self.bwt.extend_unchecked(self.full[k] as usize);
        self.rows.insert(d, self.idx.isa(k + 1) as u64);
        self.pos += 1;
    }
}
