//! Corpus characterization: empirical entropies, alphabet size, greedy
//! factor count and BWT runs.

use std::fmt::Write as _;

use crate::lz::greedy_parse_nsvpsv;
use crate::suffix::{static_bwt_runs, PsvNsv, SuffixIndex};
use crate::text::Text;

/// Occurrence counts of each length-`k` context and of each context followed
/// by a symbol, over the body only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextTable {
    pub k: usize,
    /// `(context, next symbol, count)` sorted by context then symbol.
    pub pairs: Vec<(Vec<u8>, u8, usize)>,
}

impl ContextTable {
    pub fn build(body: &[u8], k: usize) -> Self {
        let mut starts: Vec<usize> = (0..body.len().saturating_sub(k)).collect();
        starts.sort_unstable_by(|&a, &b| body[a..=a + k].cmp(&body[b..=b + k]));
        let mut pairs: Vec<(Vec<u8>, u8, usize)> = Vec::new();
        for s in starts {
            let (ctx, c) = (&body[s..s + k], body[s + k]);
            match pairs.last_mut() {
                Some((w, d, n)) if w.as_slice() == ctx && *d == c => *n += 1,
                _ => pairs.push((ctx.to_vec(), c, 1)),
            }
        }
        Self { k, pairs }
    }

    /// Counts grouped by context: one slice of symbol counts per context.
    fn groups(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.pairs
            .chunk_by(|a, b| a.0 == b.0)
            .map(|g| g.iter().map(|p| p.2).collect())
    }
}

/// `Σ n_c log₂(m / n_c)` for counts summing to `m`.
fn weighted_h0(counts: &[usize]) -> f64 {
    let m: usize = counts.iter().sum();
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| c as f64 * (m as f64 / c as f64).log2())
        .sum()
}

/// Empirical entropy `H_k` of the body in bits per symbol.
///
/// Only positions preceded by a full `k`-context contribute; the sum is
/// normalized by the whole body length. Returns 0 when `n <= k`.
pub fn empirical_entropy(text: &Text, k: usize) -> f64 {
    let body = text.body();
    if body.len() <= k {
        return 0.0;
    }
    let table = ContextTable::build(body, k);
    table.groups().map(|g| weighted_h0(&g)).sum::<f64>() / body.len() as f64
}

/// One row of corpus statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsReport {
    pub name: String,
    pub n: usize,
    pub sigma: usize,
    pub z: usize,
    pub r: usize,
    /// `H_0 ..= H_max_k`.
    pub h: Vec<f64>,
}

impl StatsReport {
    /// CSV header matching [`Self::csv_row`] for `max_k`.
    pub fn csv_header(max_k: usize) -> String {
        let mut s = String::from("name,n,sigma,z,r");
        (0..=max_k).for_each(|k| write!(s, ",H{k}").unwrap());
        s
    }

    /// Entropies are truncated (not rounded) to two decimals.
    pub fn csv_row(&self) -> String {
        let mut s = format!("{},{},{},{},{}", self.name, self.n, self.sigma, self.z, self.r);
        self.h.iter().for_each(|h| write!(s, ",{:.2}", truncate2(*h)).unwrap());
        s
    }
}

fn truncate2(x: f64) -> f64 {
    // the small bias keeps values like 0.29 from printing as 0.28
    ((x * 100.0) + 1e-9).floor() / 100.0
}

/// Greedy factor count without the virtual prefix: a symbol with no earlier
/// occurrence is a literal phrase of length one.
pub fn literal_factor_count(body: &[u8]) -> usize {
    if body.is_empty() {
        return 0;
    }
    let idx = SuffixIndex::build(body);
    let ps = PsvNsv::build(&idx);
    let (mut i, mut z) = (0, 0);
    while i < body.len() {
        let j = idx.isa(i);
        let l = [ps.psv(j), ps.nsv(j)].into_iter().flatten().map(|s| idx.lce(i, idx.sa(s))).max().unwrap_or(0);
        i += l.max(1);
        z += 1;
    }
    z
}

/// `n`, distinct symbols, greedy factor count (virtual prefix included),
/// BWT runs of `body·$` and `H_0 ..= H_max_k`.
pub fn dataset_stats(name: &str, text: &Text, max_k: usize) -> StatsReport {
    let h = (0..=max_k).map(|k| empirical_entropy(text, k)).collect();
    StatsReport {
        name: name.to_string(),
        n: text.n(),
        sigma: text.distinct_symbols(),
        z: greedy_parse_nsvpsv(text).z(),
        r: if text.n() == 0 { 0 } else { static_bwt_runs(text.body()).runs },
        h,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    /// Recount with a hash map per context.
    fn naive_entropy(body: &[u8], k: usize) -> f64 {
        if body.len() <= k {
            return 0.0;
        }
        let mut ctx: HashMap<&[u8], HashMap<u8, usize>> = HashMap::new();
        for i in k..body.len() {
            *ctx.entry(&body[i - k..i]).or_default().entry(body[i]).or_default() += 1;
        }
        let mut total = 0.0;
        for follow in ctx.values() {
            let m: usize = follow.values().sum();
            for &c in follow.values() {
                total += c as f64 * (m as f64 / c as f64).log2();
            }
        }
        total / body.len() as f64
    }

    #[test]
    fn uniform_and_constant_bodies() {
        let ab = Text::from_bytes(&b"ab".repeat(50));
        assert_eq!(empirical_entropy(&ab, 0), 1.0);
        assert_eq!(empirical_entropy(&ab, 1), 0.0);
        assert_eq!(empirical_entropy(&Text::from_bytes(b"aaaa"), 0), 0.0);
        assert_eq!(empirical_entropy(&Text::from_bytes(b"ab"), 3), 0.0);
    }

    #[test]
    fn abbabb_row() {
        let r = dataset_stats("abbabb", &Text::from_bytes(b"abbabb"), 4);
        assert_eq!((r.n, r.sigma, r.z), (6, 2, 4));
        assert_eq!(StatsReport::csv_header(4), "name,n,sigma,z,r,H0,H1,H2,H3,H4");
        assert!(r.csv_row().starts_with("abbabb,6,2,4,"));
        assert_eq!(r.csv_row().split(',').count(), 10);
    }

    fn naive_literal_count(b: &[u8]) -> usize {
        let (mut i, mut z) = (0, 0);
        while i < b.len() {
            let l = (0..i).map(|s| b[s..].iter().zip(&b[i..]).take_while(|(x, y)| x == y).count()).max().unwrap_or(0);
            i += l.max(1);
            z += 1;
        }
        z
    }

    #[test]
    fn literal_count_examples() {
        assert_eq!(literal_factor_count(b""), 0);
        // a|b|b|abb
        assert_eq!(literal_factor_count(b"abbabb"), 4);
        assert_eq!(literal_factor_count(b"aaaa"), 2);
    }

    #[test]
    fn csv_truncates_entropies() {
        let r = StatsReport { name: "x".into(), n: 1, sigma: 1, z: 1, r: 1, h: vec![4.5677, 0.29, 1.0] };
        assert_eq!(r.csv_row(), "x,1,1,1,1,4.56,0.29,1.00");
    }

    #[test]
    fn context_counts_sum_to_positions() {
        let body = b"mississippi";
        for k in 0..4 {
            let t = ContextTable::build(body, k);
            assert_eq!(t.pairs.iter().map(|p| p.2).sum::<usize>(), body.len() - k);
        }
    }

    proptest! {
        #[test]
        fn matches_recount_and_is_monotone(body in prop::collection::vec(0u8..6, 0..2000)) {
            let t = Text::from_bytes(&body);
            let mut prev = f64::INFINITY;
            for k in 0..=4 {
                let h = empirical_entropy(&t, k);
                prop_assert!((h - naive_entropy(&body, k)).abs() < 1e-9);
                prop_assert!(h <= prev + 1e-9);
                prev = h;
            }
            prop_assert_eq!(literal_factor_count(&body), naive_literal_count(&body));
            let sigma = t.distinct_symbols();
            if sigma > 0 {
                prop_assert!(empirical_entropy(&t, 0) <= (sigma as f64).log2() + 1e-9);
            }
        }
    }
}

