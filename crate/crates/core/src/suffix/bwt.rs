use super::suffix_array;

/// BWT of a body with one appended terminator smaller than every symbol.
///
/// `symbols` omits the terminator's row, which is recorded as `primary`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticBwt {
    pub symbols: Vec<u8>,
    pub primary: usize,
    pub runs: usize,
}

impl StaticBwt {
    /// The full column with the terminator shown as `None`.
    pub fn column(&self) -> Vec<Option<u8>> {
        let mut col: Vec<Option<u8>> = self.symbols.iter().map(|&c| Some(c)).collect();
        col.insert(self.primary, None);
        col
    }
}

/// BWT of `body·$` and its number of maximal equal-symbol runs.
pub fn static_bwt_runs(body: &[u8]) -> StaticBwt {
    let sa = suffix_array(body);
    let mut symbols = Vec::with_capacity(body.len());
    let mut primary = 0;
    let mut runs = 0;
    let mut prev: Option<Option<u8>> = None;
    for (row, &s) in sa.iter().enumerate() {
        let cur = if s == 0 {
            primary = row;
            None
        } else {
            let c = body[s as usize - 1];
            symbols.push(c);
            Some(c)
        };
        if prev != Some(cur) {
            runs += 1;
        }
        prev = Some(cur);
    }
    StaticBwt { symbols, primary, runs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(body: &[u8]) -> Vec<Option<u8>> {
        let mut rows: Vec<usize> = (0..=body.len()).collect();
        rows.sort_by(|&a, &b| body[a..].cmp(&body[b..]));
        rows.iter().map(|&s| if s == 0 { None } else { Some(body[s - 1]) }).collect()
    }

    fn runs(col: &[Option<u8>]) -> usize {
        col.iter().enumerate().filter(|&(i, c)| i == 0 || col[i - 1] != *c).count()
    }

    #[test]
    fn repeated_symbol() {
        let b = static_bwt_runs(b"aaaa");
        assert_eq!(b.column(), naive(b"aaaa"));
        assert!(b.runs <= 3);
        assert!(static_bwt_runs(b"a").runs <= 2);
    }

    #[test]
    fn matches_direct_construction() {
        for body in [&b"banana"[..], b"abbabb", b"mississippi", b"", b"abracadabra"] {
            let b = static_bwt_runs(body);
            let col = naive(body);
            assert_eq!(b.column(), col);
            assert_eq!(b.runs, runs(&col));
        }
    }
}
