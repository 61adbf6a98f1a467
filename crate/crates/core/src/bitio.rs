//! Bit-granular I/O and the universal integer codes used for factor pairs.
//!
//! Bits are packed MSB-first within each byte; the final byte is zero-padded.

use crate::error::{invalid, Error, Result};

/// A growable bit buffer with an independent read cursor.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitStream {
    bytes: Vec<u8>,
    bit_len: usize,
    cursor: usize,
}

impl BitStream {
    pub fn new() -> Self {
        Self::default()
    }

    /// Wraps `bytes` for reading; every bit of every byte counts as valid.
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        let bit_len = bytes.len() * 8;
        Self { bytes, bit_len, cursor: 0 }
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    pub fn bit_len(&self) -> usize {
        self.bit_len
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn remaining(&self) -> usize {
        self.bit_len - self.cursor
    }

    pub fn write_bit(&mut self, bit: bool) {
        let off = self.bit_len % 8;
        if off == 0 {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().unwrap() |= 0x80 >> off;
        }
        self.bit_len += 1;
    }

    /// Appends the low `count` bits of `value`, most significant first.
    pub fn write_bits(&mut self, value: u64, count: u32) {
        debug_assert!(count <= 64);
        for i in (0..count).rev() {
            self.write_bit((value >> i) & 1 == 1);
        }
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        if self.cursor >= self.bit_len {
            return Err(Error::Decode("unexpected end of bit stream".into()));
        }
        let byte = self.bytes[self.cursor / 8];
        let bit = byte & (0x80 >> (self.cursor % 8)) != 0;
        self.cursor += 1;
        Ok(bit)
    }

    pub fn read_bits(&mut self, count: u32) -> Result<u64> {
        debug_assert!(count <= 64);
        if self.remaining() < count as usize {
            return Err(Error::Decode("unexpected end of bit stream".into()));
        }
        let mut v = 0u64;
        for _ in 0..count {
            v = (v << 1) | self.read_bit()? as u64;
        }
        Ok(v)
    }
}

/// A universal integer code, or the cost-only binary-length model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Code {
    Gamma,
    Delta,
    /// `⌈log₂(x+1)⌉` bits; prices values but cannot emit them.
    BinaryLengthCost,
}

impl Code {
    pub fn is_decodable(self) -> bool {
        !matches!(self, Code::BinaryLengthCost)
    }

    pub fn name(self) -> &'static str {
        match self {
            Code::Gamma => "gamma",
            Code::Delta => "delta",
            Code::BinaryLengthCost => "binary-length-cost",
        }
    }
}

#[inline]
fn floor_log2(x: u64) -> u32 {
    63 - x.leading_zeros()
}

/// Bit length of `code` applied to `x`. `x` must be at least 1.
#[inline]
pub fn code_len(code: Code, x: u64) -> u32 {
    debug_assert!(x >= 1);
    let b = floor_log2(x);
    match code {
        Code::Gamma => 2 * b + 1,
        Code::Delta => b + 2 * floor_log2(b as u64 + 1) + 1,
        Code::BinaryLengthCost => b + 1,
    }
}

/// Checked variant of [`code_len`].
pub fn try_code_len(code: Code, x: u64) -> Result<u32> {
    if x == 0 {
        return Err(invalid("code length of 0 is undefined"));
    }
    Ok(code_len(code, x))
}

pub fn gamma_encode(x: u64, out: &mut BitStream) -> Result<()> {
    if x == 0 {
        return Err(invalid("gamma code requires x >= 1"));
    }
    let b = floor_log2(x);
    out.write_bits(0, b);
    out.write_bits(x, b + 1);
    Ok(())
}

pub fn delta_encode(x: u64, out: &mut BitStream) -> Result<()> {
    if x == 0 {
        return Err(invalid("delta code requires x >= 1"));
    }
    let b = floor_log2(x);
    gamma_encode(b as u64 + 1, out)?;
    out.write_bits(x, b);
    Ok(())
}

pub fn gamma_decode(input: &mut BitStream) -> Result<u64> {
    let mut zeros = 0u32;
    while !input.read_bit()? {
        zeros += 1;
        if zeros > 63 {
            return Err(Error::Decode("gamma code longer than 64 bits".into()));
        }
    }
    let rest = input.read_bits(zeros)?;
    Ok((1u64 << zeros) | rest)
}

pub fn delta_decode(input: &mut BitStream) -> Result<u64> {
    let width = gamma_decode(input)?;
    if width > 64 {
        return Err(Error::Decode("delta code longer than 64 bits".into()));
    }
    let b = width as u32 - 1;
    let rest = input.read_bits(b)?;
    Ok((1u64 << b) | rest)
}

pub fn encode(code: Code, x: u64, out: &mut BitStream) -> Result<()> {
    match code {
        Code::Gamma => gamma_encode(x, out),
        Code::Delta => delta_encode(x, out),
        Code::BinaryLengthCost => Err(invalid("binary-length-cost cannot emit bits")),
    }
}

pub fn decode(code: Code, input: &mut BitStream) -> Result<u64> {
    match code {
        Code::Gamma => gamma_decode(input),
        Code::Delta => delta_decode(input),
        Code::BinaryLengthCost => Err(invalid("binary-length-cost cannot decode bits")),
    }
}

/// Writes a sign bit (`0` positive, `1` negative) followed by `code(|off|)`.
pub fn signed_encode(off: i64, code: Code, out: &mut BitStream) -> Result<()> {
    if off == 0 {
        return Err(invalid("signed offsets must be nonzero"));
    }
    if !code.is_decodable() {
        return Err(invalid("binary-length-cost cannot emit bits"));
    }
    out.write_bit(off < 0);
    encode(code, off.unsigned_abs(), out)
}

pub fn signed_decode(code: Code, input: &mut BitStream) -> Result<i64> {
    let negative = input.read_bit()?;
    let mag = decode(code, input)?;
    let mag = i64::try_from(mag).map_err(|_| Error::Decode("offset magnitude overflows".into()))?;
    Ok(if negative { -mag } else { mag })
}

/// A maximal run `[lo..=hi]` of magnitudes sharing one code length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostClass {
    pub lo: u64,
    pub hi: u64,
    pub bits: u32,
}

/// Partitions `[1..=max_mag]` into ascending classes of equal code length.
pub fn cost_classes(code: Code, max_mag: u64) -> Vec<CostClass> {
    let mut classes: Vec<CostClass> = Vec::new();
    if max_mag == 0 {
        return classes;
    }
    // Every supported length depends only on ⌊log₂x⌋, so power-of-two bands
    // are unions of classes; adjacent bands with equal length are merged.
    let mut lo = 1u64;
    loop {
        let hi = if lo > max_mag / 2 { max_mag } else { (lo * 2 - 1).min(max_mag) };
        let bits = code_len(code, lo);
        match classes.last_mut() {
            Some(last) if last.bits == bits => last.hi = hi,
            _ => classes.push(CostClass { lo, hi, bits }),
        }
        if hi == max_mag {
            break;
        }
        lo = hi + 1;
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits_of(s: &BitStream) -> String {
        let mut r = s.clone();
        r.cursor = 0;
        (0..s.bit_len()).map(|_| if r.read_bit().unwrap() { '1' } else { '0' }).collect()
    }

    fn enc(code: Code, x: u64) -> String {
        let mut s = BitStream::new();
        encode(code, x, &mut s).unwrap();
        bits_of(&s)
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(enc(Code::Gamma, 1), "1");
        assert_eq!(enc(Code::Gamma, 2), "010");
        assert_eq!(enc(Code::Gamma, 5), "00101");
    }

    #[test]
    fn delta_examples() {
        assert_eq!(enc(Code::Delta, 1), "1");
        assert_eq!(enc(Code::Delta, 2), "0100");
        assert_eq!(enc(Code::Delta, 17), "001010001");
    }

    #[test]
    fn zero_is_rejected() {
        let mut s = BitStream::new();
        assert!(matches!(gamma_encode(0, &mut s), Err(Error::InvalidArgument(_))));
        assert!(matches!(delta_encode(0, &mut s), Err(Error::InvalidArgument(_))));
        assert!(matches!(signed_encode(0, Code::Gamma, &mut s), Err(Error::InvalidArgument(_))));
        assert!(try_code_len(Code::Delta, 0).is_err());
        assert_eq!(s.bit_len(), 0);
    }

    #[test]
    fn decode_examples() {
        let mut s = BitStream::new();
        s.write_bits(0b1, 1);
        s.write_bits(0b00101, 5);
        s.cursor = 0;
        assert_eq!(gamma_decode(&mut s).unwrap(), 1);
        assert_eq!(gamma_decode(&mut s).unwrap(), 5);
        assert_eq!(s.remaining(), 0);
    }

    #[test]
    fn truncated_stream_is_a_decode_error() {
        let mut s = BitStream::new();
        s.write_bits(0b001, 3);
        s.cursor = 0;
        assert!(matches!(gamma_decode(&mut s), Err(Error::Decode(_))));
        let mut s = BitStream::new();
        s.write_bits(0b0010, 4);
        s.cursor = 0;
        assert!(matches!(delta_decode(&mut s), Err(Error::Decode(_))));
        let mut empty = BitStream::new();
        assert!(gamma_decode(&mut empty).is_err());
    }

    #[test]
    fn long_zero_run_does_not_overflow() {
        let mut s = BitStream::from_bytes(vec![0; 16]);
        assert!(gamma_decode(&mut s).is_err());
    }

    #[test]
    fn code_len_examples() {
        assert_eq!(code_len(Code::BinaryLengthCost, 1), 1);
        assert_eq!(code_len(Code::BinaryLengthCost, 3), 2);
        assert_eq!(code_len(Code::BinaryLengthCost, 7), 3);
        assert_eq!(code_len(Code::Gamma, 1), 1);
        assert_eq!(code_len(Code::Delta, 17), 9);
    }

    #[test]
    fn signed_examples() {
        let mut s = BitStream::new();
        signed_encode(1, Code::Gamma, &mut s).unwrap();
        assert_eq!(bits_of(&s), "01");
        let mut s = BitStream::new();
        signed_encode(-1, Code::Gamma, &mut s).unwrap();
        assert_eq!(bits_of(&s), "11");
        let mut s = BitStream::new();
        assert!(signed_encode(3, Code::BinaryLengthCost, &mut s).is_err());
    }

    #[test]
    fn cost_class_examples() {
        let c = |lo, hi, bits| CostClass { lo, hi, bits };
        assert_eq!(cost_classes(Code::Gamma, 7), vec![c(1, 1, 1), c(2, 3, 3), c(4, 7, 5)]);
        assert_eq!(
            cost_classes(Code::BinaryLengthCost, 7),
            vec![c(1, 1, 1), c(2, 3, 2), c(4, 7, 3)]
        );
        assert_eq!(cost_classes(Code::Gamma, 1), vec![c(1, 1, 1)]);
        assert_eq!(cost_classes(Code::Delta, 5), vec![c(1, 1, 1), c(2, 3, 4), c(4, 5, 5)]);
        assert!(cost_classes(Code::Gamma, 0).is_empty());
    }

    #[test]
    fn bits_cross_byte_boundaries() {
        let mut s = BitStream::new();
        let vals: Vec<(u64, u32)> = (1..40).map(|i| ((i * 2654435761u64) & ((1 << (i % 13 + 1)) - 1), (i % 13 + 1) as u32)).collect();
        for &(v, w) in &vals {
            s.write_bits(v, w);
        }
        assert!(s.bit_len() <= s.bytes().len() * 8);
        let pad = s.bytes().len() * 8 - s.bit_len();
        assert_eq!(s.bytes().last().unwrap() & ((1u16 << pad) - 1) as u8, 0);
        for &(v, w) in &vals {
            assert_eq!(s.read_bits(w).unwrap(), v);
        }
    }

    #[test]
    fn large_values_round_trip() {
        for code in [Code::Gamma, Code::Delta] {
            let mut s = BitStream::new();
            for x in [u64::MAX, 1 << 63, (1 << 40) + 12345] {
                encode(code, x, &mut s).unwrap();
            }
            for x in [u64::MAX, 1 << 63, (1 << 40) + 12345] {
                assert_eq!(decode(code, &mut s).unwrap(), x);
            }
        }
    }
}
