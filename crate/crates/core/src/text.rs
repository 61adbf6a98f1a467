//! Texts over a mapped alphabet, stored together with their virtual prefix.

use crate::error::{invalid, Result};

/// Largest supported alphabet; symbols are stored as bytes.
pub const MAX_SIGMA: usize = 256;

/// A body over `[0..sigma)` logically preceded by one copy of every symbol.
///
/// The full logical text `T'` has length `sigma + n`. Its first `sigma`
/// entries are the virtual prefix `sigma-1, sigma-2, .., 0`, so symbol `c`
/// sits at logical position `-c`; the body follows. Internally positions are
/// 0-based indices into `T'`: body position `p` (1-based) is index `sigma + p - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    full: Vec<u8>,
    sigma: usize,
    alphabet: Vec<u8>,
}

impl Text {
    /// Builds a text from already mapped symbols.
    pub fn from_symbols(body: &[u8], sigma: usize) -> Result<Self> {
        if sigma > MAX_SIGMA {
            return Err(invalid(format!("alphabet size {sigma} exceeds {MAX_SIGMA}")));
        }
        if let Some(&bad) = body.iter().find(|&&c| c as usize >= sigma) {
            return Err(invalid(format!("symbol {bad} outside alphabet of size {sigma}")));
        }
        let alphabet = (0..sigma).map(|c| c as u8).collect();
        Ok(Self::assemble(body, sigma, alphabet))
    }

    /// Maps raw bytes onto `[0..sigma)` by ascending byte value.
    pub fn from_bytes(raw: &[u8]) -> Self {
        let mut seen = [false; 256];
        for &b in raw {
            seen[b as usize] = true;
        }
        let alphabet: Vec<u8> = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        Self::with_alphabet(raw, &alphabet).expect("alphabet covers every byte")
    }

    /// Maps raw bytes through a strictly ascending `alphabet`.
    pub fn with_alphabet(raw: &[u8], alphabet: &[u8]) -> Result<Self> {
        if alphabet.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("alphabet must be strictly ascending"));
        }
        let mut map = [u16::MAX; 256];
        for (i, &b) in alphabet.iter().enumerate() {
            map[b as usize] = i as u16;
        }
        let mut body = Vec::with_capacity(raw.len());
        for &b in raw {
            let m = map[b as usize];
            if m == u16::MAX {
                return Err(invalid(format!("byte {b} not in alphabet")));
            }
            body.push(m as u8);
        }
        Ok(Self::assemble(&body, alphabet.len(), alphabet.to_vec()))
    }

    fn assemble(body: &[u8], sigma: usize, alphabet: Vec<u8>) -> Self {
        let mut full = Vec::with_capacity(sigma + body.len());
        full.extend((0..sigma).rev().map(|c| c as u8));
        full.extend_from_slice(body);
        Self { full, sigma, alphabet }
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Length of the factorized part.
    pub fn n(&self) -> usize {
        self.full.len() - self.sigma
    }

    pub fn body(&self) -> &[u8] {
        &self.full[self.sigma..]
    }

    /// The logical text `T'`: virtual prefix followed by the body.
    pub fn full(&self) -> &[u8] {
        &self.full
    }

    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    /// Number of distinct symbols occurring in the body.
    pub fn distinct_symbols(&self) -> usize {
        let mut seen = [false; 256];
        self.body().iter().for_each(|&c| seen[c as usize] = true);
        seen.iter().filter(|&&s| s).count()
    }

    /// Maps the body back to original byte values.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.body().iter().map(|&c| self.alphabet[c as usize]).collect()
    }
}
