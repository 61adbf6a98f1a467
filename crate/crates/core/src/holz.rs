//! Greedy parsing with co-lexicographic offsets, its definitional oracle and
//! the colex decoder.
//!
//! Offsets are differences of colex ranks among the prefixes indexed when a
//! factor starts: `off = r - t`, with `r` the rank of the processed prefix and
//! `t` the rank of the source prefix. The source prefix is followed by the
//! factor in `T'`.

use crate::dynamic::{DynBwt, InsertMarks};
use crate::error::{corrupt, invalid, Result};
use crate::lz::{Factor, Parsing, Semantics};
use crate::text::Text;

/// One encoded factor with the 1-based colex ranks that produced its offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorTrace {
    pub factor: Factor,
    /// Rank of the processed prefix.
    pub r: usize,
    /// Rank of the chosen source prefix.
    pub t: usize,
}

/// Incremental greedy encoder over a dynamic BWT.
#[derive(Debug, Clone)]
pub struct HolzEncoder<'a> {
    full: &'a [u8],
    bwt: DynBwt,
    marks: InsertMarks,
    pos: usize,
}

impl<'a> HolzEncoder<'a> {
    pub fn new(text: &'a Text) -> Result<Self> {
        let sigma = text.sigma().max(1);
        let bwt = DynBwt::new(sigma)?;
        let marks = InsertMarks::new(bwt.rows());
        Ok(Self { full: text.full(), bwt, marks, pos: text.sigma() })
    }

    /// Encodes the next factor, or `None` once the body is consumed.
    pub fn next_factor(&mut self) -> Option<FactorTrace> {
        let n = self.full.len();
        let start = self.pos;
        if start >= n {
            return None;
        }
        let mut r_row = self.bwt.dollar_row();
        let mut range = 0..self.bwt.rows();
        let mut d = r_row;
        let mut len = 0;
        while start + len < n {
            let c = self.full[start + len] as usize;
            let Some(next) = self.bwt.backward_step(range.clone(), c) else { break };
            d = self.bwt.extend_unchecked(c);
            self.marks.insert_row(d, true);
            if d <= r_row {
                r_row += 1;
            }
            debug_assert!(next.start <= d && d <= next.end);
            range = next.start..next.end + 1;
            len += 1;
        }
        assert!(len >= 1, "the virtual prefix holds every symbol");
        // range members are ordered like their source prefixes, d being the processed one
        let back = |mut row: usize| {
            for _ in 0..len {
                row = self.bwt.fl_unchecked(row);
            }
            row - self.marks.count_below(row)
        };
        let r = r_row - self.marks.count_below(r_row);
        let pred = (d > range.start).then(|| back(d - 1));
        let succ = (d + 1 < range.end).then(|| back(d + 1));
        let t = match (pred, succ) {
            (Some(p), Some(s)) => {
                if r - p <= s - r {
                    p
                } else {
                    s
                }
            }
            (Some(p), None) => p,
            (None, Some(s)) => s,
            (None, None) => unreachable!("a nonempty step leaves a source row"),
        };
        self.marks.clear();
        self.pos += len;
        Some(FactorTrace { factor: Factor::new(r as i64 - t as i64, len), r: r + 1, t: t + 1 })
    }
}

/// Greedy parse with colex offsets.
pub fn holz_parse(text: &Text) -> Parsing {
    if text.n() == 0 {
        return Parsing::new(Vec::new(), Semantics::Colex);
    }
    let mut enc = HolzEncoder::new(text).expect("alphabet size already validated");
    let mut factors = Vec::new();
    while let Some(tr) = enc.next_factor() {
        factors.push(tr.factor);
    }
    Parsing::new(factors, Semantics::Colex)
}

/// Prefix lengths `0..=p.len()` sorted co-lexicographically.
fn colex_ranks(p: &[u8]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..=p.len()).collect();
    order.sort_by(|&a, &b| p[..a].iter().rev().cmp(p[..b].iter().rev()));
    let mut rank = vec![0; order.len()];
    for (i, &m) in order.iter().enumerate() {
        rank[m] = i;
    }
    rank
}

/// Definitional greedy parse: explicit colex sorting at every factor.
pub fn holz_oracle_parse(text: &Text) -> Parsing {
    let full = text.full();
    let mut factors = Vec::new();
    let mut k = text.sigma();
    while k < full.len() {
        let lce = |m: usize| full[m..].iter().zip(&full[k..]).take_while(|(a, b)| a == b).count();
        let len = (0..k).map(lce).max().expect("virtual prefix is nonempty");
        let rank = colex_ranks(&full[..k]);
        let r = rank[k] as i64;
        let mut best: Option<i64> = None;
        for m in (0..k).filter(|&m| lce(m) >= len) {
            let t = rank[m] as i64;
            best = match best {
                Some(b) if (r - b).abs() < (r - t).abs() || ((r - b).abs() == (r - t).abs() && b < r) => Some(b),
                _ => Some(t),
            };
        }
        factors.push(Factor::new(r - best.unwrap(), len));
        k += len;
    }
    Parsing::new(factors, Semantics::Colex)
}

/// Rebuilds the body of a colex parsing by walking the growing BWT.
pub fn holz_decode(parsing: &Parsing, sigma: usize) -> Result<Text> {
    if parsing.semantics != Semantics::Colex {
        return Err(invalid("holz_decode needs colex offsets"));
    }
    if parsing.factors.is_empty() {
        return Text::from_symbols(&[], sigma);
    }
    let mut bwt = DynBwt::new(sigma)?;
    let mut body = Vec::new();
    for f in &parsing.factors {
        if f.len == 0 {
            return Err(corrupt("zero-length factor"));
        }
        let t = bwt.dollar_row() as i64 - f.off;
        if f.off == 0 || t < 0 || t >= bwt.rows() as i64 {
            return Err(corrupt(format!("offset {} out of range", f.off)));
        }
        let mut row = t as usize;
        for _ in 0..f.len {
            let c = bwt.symbol_unchecked(row).ok_or_else(|| corrupt("source runs into the processed prefix"))?;
            body.push(c as u8);
            let d = bwt.extend_unchecked(c);
            if d <= row {
                row += 1;
            }
            row = bwt.lf_unchecked(row);
        }
    }
    Text::from_symbols(&body, sigma)
}
