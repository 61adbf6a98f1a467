use super::bitvector::DynBitVector;
use crate::error::{invalid, Result};
use crate::wavelet::{width_for, WaveletMatrix};

/// A dynamic sequence over `[0..sigma)`: a wavelet matrix whose levels are
/// dynamic bit vectors.
#[derive(Debug, Clone)]
pub struct DynSequence {
    wm: WaveletMatrix<DynBitVector>,
    sigma: usize,
}

impl DynSequence {
    pub fn new(sigma: usize) -> Self {
        Self { wm: WaveletMatrix::empty(width_for(sigma as u64)), sigma }
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn len(&self) -> usize {
        self.wm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wm.is_empty()
    }

    fn check_symbol(&self, sym: usize) -> Result<()> {
        if sym >= self.sigma {
            return Err(invalid(format!("symbol {sym} outside alphabet of size {}", self.sigma)));
        }
        Ok(())
    }

    pub fn insert(&mut self, pos: usize, sym: usize) -> Result<()> {
        self.check_symbol(sym)?;
        if pos > self.len() {
            return Err(invalid(format!("insert position {pos} out of bounds for length {}", self.len())));
        }
        self.wm.insert(pos, sym as u64);
        Ok(())
    }

    pub fn access(&self, i: usize) -> Result<usize> {
        if i >= self.len() {
            return Err(invalid(format!("position {i} out of bounds for length {}", self.len())));
        }
        Ok(self.wm.access(i) as usize)
    }

    /// Occurrences of `sym` in `[0, i)`.
    pub fn rank(&self, sym: usize, i: usize) -> Result<usize> {
        self.check_symbol(sym)?;
        if i > self.len() {
            return Err(invalid(format!("rank position {i} out of bounds for length {}", self.len())));
        }
        Ok(self.wm.rank(sym as u64, i))
    }

    /// Position of the `k`-th (0-based) occurrence of `sym`.
    pub fn select(&self, sym: usize, k: usize) -> Result<usize> {
        self.check_symbol(sym)?;
        self.wm.select(sym as u64, k).ok_or_else(|| invalid(format!("symbol {sym} occurs at most {k} times")))
    }

    pub(crate) fn insert_unchecked(&mut self, pos: usize, sym: usize) {
        self.wm.insert(pos, sym as u64);
    }

    pub(crate) fn access_unchecked(&self, i: usize) -> usize {
        self.wm.access(i) as usize
    }

    pub(crate) fn rank_unchecked(&self, sym: usize, i: usize) -> usize {
        self.wm.rank(sym as u64, i)
    }

    pub(crate) fn select_unchecked(&self, sym: usize, k: usize) -> usize {
        self.wm.select(sym as u64, k).expect("select within symbol count")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    #[test]
    fn bba_by_inserts() {
        let mut s = DynSequence::new(2);
        s.insert(0, 0).unwrap();
        s.insert(0, 1).unwrap();
        s.insert(0, 1).unwrap();
        let got: Vec<usize> = (0..3).map(|i| s.access(i).unwrap()).collect();
        assert_eq!(got, vec![1, 1, 0]);
        assert!(s.insert(4, 0).is_err());
        assert!(s.insert(0, 2).is_err());
        assert!(s.access(3).is_err());
        assert!(s.select(0, 1).is_err());
    }

    #[test]
    fn rank_of_select_is_k() {
        let mut s = DynSequence::new(3);
        for (i, c) in [2, 0, 2, 1, 2].into_iter().enumerate() {
            s.insert(i, c).unwrap();
        }
        for k in 0..3 {
            let p = s.select(2, k).unwrap();
            // rank counts strictly before the position
            assert_eq!(s.rank(2, p).unwrap(), k);
            assert_eq!(s.rank(2, p + 1).unwrap(), k + 1);
        }
    }

    #[test]
    fn random_ops_match_vec() {
        let mut rng = StdRng::seed_from_u64(11);
        let sigma = 16;
        let mut s = DynSequence::new(sigma);
        let mut naive: Vec<usize> = Vec::new();
        for _ in 0..100_000 {
            let op = rng.gen_range(0..4);
            if (op < 2 && naive.len() < 4000) || naive.is_empty() {
                let i = rng.gen_range(0..=naive.len());
                let c = if rng.gen_bool(0.5) { rng.gen_range(0..3) } else { rng.gen_range(0..sigma) };
                s.insert(i, c).unwrap();
                naive.insert(i, c);
            } else if op == 2 {
                let i = rng.gen_range(0..naive.len());
                assert_eq!(s.access(i).unwrap(), naive[i]);
            } else {
                let c = rng.gen_range(0..sigma);
                let i = rng.gen_range(0..=naive.len());
                let r = naive[..i].iter().filter(|&&x| x == c).count();
                assert_eq!(s.rank(c, i).unwrap(), r);
                let total = naive.iter().filter(|&&x| x == c).count();
                if r < total {
                    let want = naive.iter().enumerate().filter(|&(_, &x)| x == c).nth(r).unwrap().0;
                    assert_eq!(s.select(c, r).unwrap(), want);
                }
            }
        }
    }
}
