use super::bitvector::DynBitVector;
use crate::wavelet::{InsertBits, RankSelect};

/// One bit per BWT row flagging rows inserted since the last reset.
///
/// Mirrors every row insertion of the BWT it follows, so marked rows stay
/// valid as the BWT grows.
#[derive(Debug, Clone)]
pub struct InsertMarks {
    bits: DynBitVector,
}

impl InsertMarks {
    /// Tracks a BWT with `rows` rows and no marks.
    pub fn new(rows: usize) -> Self {
        Self { bits: DynBitVector::filled(rows, false) }
    }

    pub fn rows(&self) -> usize {
        self.bits.len()
    }

    /// Number of marked rows.
    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Records a row inserted at `row`; later rows shift by one.
    pub fn insert_row(&mut self, row: usize, marked: bool) {
        self.bits.insert(row, marked);
    }

    pub fn is_marked(&self, row: usize) -> bool {
        self.bits.get(row)
    }

    /// Marked rows in `[0, row)`.
    pub fn count_below(&self, row: usize) -> usize {
        self.bits.rank1(row)
    }

    /// Marked rows strictly between `a` and `b`.
    pub fn count_between(&self, a: usize, b: usize) -> usize {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if hi - lo < 2 {
            return 0;
        }
        self.bits.rank1(hi) - self.bits.rank1(lo + 1)
    }

    /// Marked rows in increasing order.
    pub fn marked_rows(&self) -> Vec<usize> {
        (0..self.len()).map(|k| self.bits.select1(k)).collect()
    }

    /// Unmarks every row.
    pub fn clear(&mut self) {
        while !self.is_empty() {
            let r = self.bits.select1(0);
            self.bits.set(r, false);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    #[test]
    fn empty_and_outside_marks_count_zero() {
        let mut m = InsertMarks::new(10);
        assert_eq!(m.count_between(2, 8), 0);
        m.insert_row(0, true);
        m.insert_row(11, true);
        assert_eq!(m.count_between(3, 9), 0);
        assert_eq!(m.count_between(9, 3), 0);
        assert_eq!(m.marked_rows(), vec![0, 11]);
        m.clear();
        assert!(m.is_empty());
        assert_eq!(m.rows(), 12);
    }

    #[test]
    fn random_marks_match_linear_count() {
        let mut rng = StdRng::seed_from_u64(31);
        let mut m = InsertMarks::new(50);
        let mut naive = vec![false; 50];
        for _ in 0..3000 {
            let r = rng.gen_range(0..=naive.len());
            let bit = rng.gen_bool(0.3);
            m.insert_row(r, bit);
            naive.insert(r, bit);
            let a = rng.gen_range(0..naive.len());
            let b = rng.gen_range(0..naive.len());
            let (lo, hi) = (a.min(b), a.max(b));
            let want = (lo + 1..hi).filter(|&i| naive[i]).count();
            assert_eq!(m.count_between(a, b), want);
            assert_eq!(m.count_below(a), naive[..a].iter().filter(|&&x| x).count());
        }
        assert_eq!(m.marked_rows(), (0..naive.len()).filter(|&i| naive[i]).collect::<Vec<_>>());
    }
}
