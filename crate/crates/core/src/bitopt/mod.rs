//! Bit-optimal parsing: maximal arcs per offset cost class and a shortest
//! path over the factor graph, for textual and colex offsets.

mod arcs;
mod oracle;

pub use arcs::{gen_arcs_text, ColexArcGenState, TextArcGen};
pub use oracle::bitopt_oracle;

use crate::bitio::{code_len, cost_classes, Code, CostClass};
use crate::error::{Error, Result};
use crate::lz::{Factor, Parsing, Semantics};
use crate::text::Text;

/// Prices factors exactly as the container serializes them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostModel {
    pub code: Code,
    /// One sign bit per factor (colex offsets).
    pub signed: bool,
}

impl CostModel {
    pub fn new(code: Code, semantics: Semantics) -> Self {
        Self { code, signed: semantics == Semantics::Colex }
    }

    pub fn off_bits(&self, off: i64) -> u64 {
        code_len(self.code, off.unsigned_abs()) as u64 + self.signed as u64
    }

    pub fn len_bits(&self, len: usize) -> u64 {
        code_len(self.code, len as u64) as u64
    }

    pub fn factor_bits(&self, f: &Factor) -> u64 {
        self.off_bits(f.off) + self.len_bits(f.len)
    }

    /// Payload bits of a whole parsing.
    pub fn parsing_bits(&self, p: &Parsing) -> u64 {
        p.factors.iter().map(|f| self.factor_bits(f)).sum()
    }

    /// Offset magnitude classes up to `max_mag`, cheapest first.
    pub fn offset_classes(&self, max_mag: u64) -> Vec<CostClass> {
        cost_classes(self.code, max_mag)
    }
}

/// A bundle of candidate factors at body position `from` (0-based): the
/// offset `off` with every length in `1..=len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub off: i64,
    pub len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Label {
    bits: u64,
    factors: u64,
    abs_off: u64,
    from: usize,
    off: i64,
}

const UNSET: Label = Label { bits: u64::MAX, factors: 0, abs_off: 0, from: 0, off: 0 };

/// Range-minimum updates with point queries.
struct MinTree {
    size: usize,
    nodes: Vec<Label>,
}

impl MinTree {
    fn new(len: usize) -> Self {
        let size = len.next_power_of_two().max(1);
        Self { size, nodes: vec![UNSET; 2 * size] }
    }

    /// Offers `label` to every position in `[a, b]`.
    fn update(&mut self, a: usize, b: usize, label: Label) {
        let (mut l, mut r) = (a + self.size, b + self.size + 1);
        while l < r {
            if l & 1 == 1 {
                self.nodes[l] = self.nodes[l].min(label);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                self.nodes[r] = self.nodes[r].min(label);
            }
            l >>= 1;
            r >>= 1;
        }
    }

    fn query(&self, i: usize) -> Label {
        let mut j = i + self.size;
        let mut best = UNSET;
        while j > 0 {
            best = best.min(self.nodes[j]);
            j >>= 1;
        }
        best
    }
}

/// Minimum-bit path from position 0 to `n` over the arcs reported by
/// `arcs_at`, which is called once per position in increasing order.
///
/// Each arc is relaxed for all of its lengths; ties prefer fewer factors,
/// then a smaller incoming offset, then an earlier start. Returns the total
/// bits and the factors of the path.
pub fn shortest_path(
    n: usize,
    cost: &CostModel,
    semantics: Semantics,
    mut arcs_at: impl FnMut(usize) -> Vec<Arc>,
) -> Result<(u64, Parsing)> {
    let len_classes = cost_classes(cost.code, n as u64);
    let mut tree = MinTree::new(n + 1);
    let mut pred: Vec<(usize, i64)> = vec![(0, 0); n + 1];
    let mut dist = vec![(0u64, 0u64); n + 1];
    for i in 0..n {
        if i > 0 {
            let l = tree.query(i);
            if l.bits == u64::MAX {
                return Err(Error::Internal(format!("position {i} is unreachable")));
            }
            dist[i] = (l.bits, l.factors);
            pred[i] = (l.from, l.off);
        }
        let mut covered = 0;
        let mut arcs = arcs_at(i);
        arcs.sort_by_key(|a| (cost.off_bits(a.off), a.off.unsigned_abs()));
        for a in arcs {
            debug_assert_eq!(a.from, i);
            let len = a.len.min(n - i);
            if len <= covered {
                continue;
            }
            let base = dist[i].0 + cost.off_bits(a.off);
            for c in &len_classes {
                let lo = (c.lo as usize).max(covered + 1);
                let hi = (c.hi as usize).min(len);
                if lo > hi {
                    continue;
                }
                let label = Label {
                    bits: base + c.bits as u64,
                    factors: dist[i].1 + 1,
                    abs_off: a.off.unsigned_abs(),
                    from: i,
                    off: a.off,
                };
                tree.update(i + lo, i + hi, label);
            }
            covered = len;
        }
    }
    if n == 0 {
        return Ok((0, Parsing::new(Vec::new(), semantics)));
    }
    let end = tree.query(n);
    if end.bits == u64::MAX {
        return Err(Error::Internal("end of text is unreachable".into()));
    }
    pred[n] = (end.from, end.off);
    let mut factors = Vec::new();
    let mut j = n;
    while j > 0 {
        let (from, off) = pred[j];
        factors.push(Factor::new(off, j - from));
        j = from;
    }
    factors.reverse();
    Ok((end.bits, Parsing::new(factors, semantics)))
}

/// Bit-optimal parse with textual offsets.
pub fn parse_bitopt_text(text: &Text, code: Code) -> Result<(u64, Parsing)> {
    let cost = CostModel::new(code, Semantics::Textual);
    let gen = TextArcGen::new(text);
    shortest_path(text.n(), &cost, Semantics::Textual, |i| gen.arcs(i, &cost))
}

/// Bit-optimal parse with colex offsets.
pub fn parse_bitopt_colex(text: &Text, code: Code) -> Result<(u64, Parsing)> {
    let cost = CostModel::new(code, Semantics::Colex);
    if text.n() == 0 {
        return Ok((0, Parsing::new(Vec::new(), Semantics::Colex)));
    }
    let mut state = ColexArcGenState::new(text)?;
    shortest_path(text.n(), &cost, Semantics::Colex, |i| {
        debug_assert_eq!(state.position(), i);
        let arcs = state.arcs(&cost);
        state.advance();
        arcs
    })
}
