use super::CostModel;
use crate::lz::{Factor, Parsing, Semantics};
use crate::text::Text;

/// Exhaustive optimum: every `(position, length)` candidate priced with its
/// smallest admissible offset, then a plain DP over all candidates.
pub fn bitopt_oracle(text: &Text, cost: &CostModel, semantics: Semantics) -> (u64, Parsing) {
    let full = text.full();
    let (sigma, n) = (text.sigma(), text.n());
    let mut best: Vec<Option<(u64, usize, i64)>> = vec![None; n + 1];
    best[0] = Some((0, 0, 0));
    for i in 0..n {
        let Some((base, _, _)) = best[i] else { continue };
        let k = sigma + i;
        let lce: Vec<usize> = (0..k).map(|m| full[m..].iter().zip(&full[k..]).take_while(|(a, b)| a == b).count()).collect();
        let mut offsets: Vec<(usize, i64)> = match semantics {
            Semantics::Textual => (0..k).map(|m| (m, (k - m) as i64)).collect(),
            Semantics::Colex => {
                let mut order: Vec<usize> = (0..=k).collect();
                order.sort_by(|&a, &b| full[..a].iter().rev().cmp(full[..b].iter().rev()));
                let r = order.iter().position(|&m| m == k).unwrap() as i64;
                order.iter().enumerate().filter(|&(_, &m)| m != k).map(|(t, &m)| (m, r - t as i64)).collect()
            }
        };
        offsets.sort_by_key(|&(_, off)| (off.unsigned_abs(), off < 0));
        // cheapest offset for each length: first source in |off| order reaching it
        let mut covered = 0;
        for (m, off) in offsets {
            for len in covered + 1..=lce[m] {
                let bits = base + cost.off_bits(off) + cost.len_bits(len);
                if best[i + len].is_none_or(|(b, _, _)| bits < b) {
                    best[i + len] = Some((bits, i, off));
                }
            }
            covered = covered.max(lce[m]);
        }
    }
    let mut factors = Vec::new();
    let mut j = n;
    while j > 0 {
        let (_, from, off) = best[j].expect("virtual prefix makes every position reachable");
        factors.push(Factor::new(off, j - from));
        j = from;
    }
    factors.reverse();
    (best[n].unwrap().0, Parsing::new(factors, semantics))
}
