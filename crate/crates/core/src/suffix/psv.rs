use super::SuffixIndex;

const NONE: u32 = u32::MAX;

/// Previous/next smaller values over suffix-array entries.
///
/// `psv[i]` is the largest `j < i` with `sa[j] < sa[i]`; `nsv[i]` the smallest
/// `j > i` with the same property.
#[derive(Debug, Clone)]
pub struct PsvNsv {
    psv: Vec<u32>,
    nsv: Vec<u32>,
}

impl PsvNsv {
    pub fn build(idx: &SuffixIndex) -> Self {
        Self::from_sa(idx.sa_slice())
    }

    /// One stack pass: an entry is popped by the first later value below it.
    pub fn from_sa(sa: &[u32]) -> Self {
        let n = sa.len();
        let mut psv = vec![NONE; n];
        let mut nsv = vec![NONE; n];
        let mut stack: Vec<u32> = Vec::new();
        for i in 0..n {
            while let Some(&top) = stack.last() {
                if sa[top as usize] > sa[i] {
                    nsv[top as usize] = i as u32;
                    stack.pop();
                } else {
                    break;
                }
            }
            if let Some(&top) = stack.last() {
                psv[i] = top;
            }
            stack.push(i as u32);
        }
        Self { psv, nsv }
    }

    pub fn psv(&self, i: usize) -> Option<usize> {
        (self.psv[i] != NONE).then_some(self.psv[i] as usize)
    }

    pub fn nsv(&self, i: usize) -> Option<usize> {
        (self.nsv[i] != NONE).then_some(self.nsv[i] as usize)
    }

    pub fn len(&self) -> usize {
        self.psv.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psv.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, seq::SliceRandom, SeedableRng};

    fn quadratic(sa: &[u32]) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        let n = sa.len();
        let psv = (0..n).map(|i| (0..i).rev().find(|&j| sa[j] < sa[i])).collect();
        let nsv = (0..n).map(|i| (i + 1..n).find(|&j| sa[j] < sa[i])).collect();
        (psv, nsv)
    }

    #[test]
    fn increasing_and_decreasing() {
        let inc: Vec<u32> = (0..10).collect();
        let p = PsvNsv::from_sa(&inc);
        for i in 1..10 {
            assert_eq!(p.psv(i), Some(i - 1));
        }
        assert_eq!(p.psv(0), None);
        let dec: Vec<u32> = (0..10).rev().collect();
        let p = PsvNsv::from_sa(&dec);
        for i in 0..9 {
            assert_eq!(p.nsv(i), Some(i + 1));
        }
        assert_eq!(p.nsv(9), None);
    }

    #[test]
    fn random_permutations_match_definition() {
        let mut rng = StdRng::seed_from_u64(1);
        for n in [1usize, 2, 7, 100, 512] {
            for _ in 0..5 {
                let mut sa: Vec<u32> = (0..n as u32).collect();
                sa.shuffle(&mut rng);
                let p = PsvNsv::from_sa(&sa);
                let (psv, nsv) = quadratic(&sa);
                for i in 0..n {
                    assert_eq!(p.psv(i), psv[i]);
                    assert_eq!(p.nsv(i), nsv[i]);
                }
            }
        }
    }
}
