//! The `.holz` file format and compress/decompress across all parsers.
//!
//! Layout, all integers little-endian:
//!
//! | bytes | field |
//! |---|---|
//! | 4 | magic `HOLZ` |
//! | 1 | version (1) |
//! | 1 | method id |
//! | 1 | code id (0 gamma, 1 delta) |
//! | 1 | flags (bit 0: zero bytes escaped) |
//! | 2 | sigma |
//! | sigma | alphabet, strictly ascending |
//! | 8 | n, body length after escaping |
//! | 8 | z, number of factors |
//!
//! The payload follows: per factor an optional sign bit (colex methods),
//! `code(|off|)` and `code(len)`, MSB-first, final byte zero-padded.

use std::fmt;
use std::str::FromStr;

use crate::bitio::{decode, encode, signed_decode, signed_encode, BitStream, Code};
use crate::bitopt::{parse_bitopt_colex, parse_bitopt_text, CostModel};
use crate::error::{corrupt, invalid, Error, Result};
use crate::holz::{holz_decode, holz_parse};
use crate::lz::{decode_text, greedy_parse_nsvpsv, greedy_parse_rightmost, Factor, Parsing, Semantics};
use crate::text::Text;

pub const MAGIC: &[u8; 4] = b"HOLZ";
pub const VERSION: u8 = 1;
const FLAG_ESCAPED: u8 = 1;

/// Zero bytes become `254 1`; `254` becomes `254 254`.
pub fn escape_zeros(raw: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(raw.len() + raw.len() / 64);
    for &b in raw {
        match b {
            0 => out.extend_from_slice(&[254, 1]),
            254 => out.extend_from_slice(&[254, 254]),
            _ => out.push(b),
        }
    }
    out
}

pub fn unescape_zeros(escaped: &[u8]) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(escaped.len());
    let mut it = escaped.iter();
    while let Some(&b) = it.next() {
        if b == 0 {
            return Err(corrupt("zero byte inside escaped data"));
        }
        if b != 254 {
            out.push(b);
            continue;
        }
        match it.next() {
            Some(1) => out.push(0),
            Some(254) => out.push(254),
            Some(&x) => return Err(corrupt(format!("invalid escape pair 254 {x}"))),
            None => return Err(corrupt("trailing escape byte")),
        }
    }
    Ok(out)
}

/// The five parsers, by container id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    LzNsvpsv = 0,
    LzRightmost = 1,
    LzOpt = 2,
    Holz = 3,
    HolzOpt = 4,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::LzNsvpsv, Method::LzRightmost, Method::LzOpt, Method::Holz, Method::HolzOpt];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Option<Self> {
        Self::ALL.get(id as usize).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::LzNsvpsv => "lz-nsvpsv",
            Method::LzRightmost => "lz-rightmost",
            Method::LzOpt => "lz-opt",
            Method::Holz => "holz",
            Method::HolzOpt => "holz-opt",
        }
    }

    pub fn semantics(self) -> Semantics {
        match self {
            Method::Holz | Method::HolzOpt => Semantics::Colex,
            _ => Semantics::Textual,
        }
    }

    /// Factorizes `text`; the bit-optimal methods optimize for `code`.
    pub fn parse(self, text: &Text, code: Code) -> Result<Parsing> {
        Ok(match self {
            Method::LzNsvpsv => greedy_parse_nsvpsv(text),
            Method::LzRightmost => greedy_parse_rightmost(text),
            Method::LzOpt => parse_bitopt_text(text, code)?.1,
            Method::Holz => holz_parse(text),
            Method::HolzOpt => parse_bitopt_colex(text, code)?.1,
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| invalid(format!("unknown method {s:?}")))
    }
}

fn code_id(code: Code) -> Result<u8> {
    match code {
        Code::Gamma => Ok(0),
        Code::Delta => Ok(1),
        Code::BinaryLengthCost => Err(invalid("binary-length-cost cannot be serialized")),
    }
}

fn code_from_id(id: u8) -> Option<Code> {
    match id {
        0 => Some(Code::Gamma),
        1 => Some(Code::Delta),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainerHeader {
    pub method: Method,
    pub code: Code,
    pub escaped: bool,
    pub alphabet: Vec<u8>,
    pub n: u64,
    pub z: u64,
}

impl ContainerHeader {
    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    pub fn byte_len(&self) -> usize {
        4 + 4 + 2 + self.alphabet.len() + 16
    }

    pub fn write(&self, out: &mut Vec<u8>) -> Result<()> {
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.push(self.method.id());
        out.push(code_id(self.code)?);
        out.push(if self.escaped { FLAG_ESCAPED } else { 0 });
        out.extend_from_slice(&(self.alphabet.len() as u16).to_le_bytes());
        out.extend_from_slice(&self.alphabet);
        out.extend_from_slice(&self.n.to_le_bytes());
        out.extend_from_slice(&self.z.to_le_bytes());
        Ok(())
    }

    /// Parses a header and returns it with the payload offset.
    pub fn read(bytes: &[u8]) -> Result<(Self, usize)> {
        let truncated = || corrupt("truncated header");
        let magic = bytes.get(..4).ok_or_else(|| {
            if MAGIC.starts_with(bytes) {
                truncated()
            } else {
                Error::Unsupported("bad magic".into())
            }
        })?;
        if magic != MAGIC {
            return Err(Error::Unsupported("bad magic".into()));
        }
        let fixed = bytes.get(4..10).ok_or_else(truncated)?;
        if fixed[0] != VERSION {
            return Err(Error::Unsupported(format!("version {}", fixed[0])));
        }
        let method = Method::from_id(fixed[1]).ok_or_else(|| Error::Unsupported(format!("method id {}", fixed[1])))?;
        let code = code_from_id(fixed[2]).ok_or_else(|| Error::Unsupported(format!("code id {}", fixed[2])))?;
        if fixed[3] & !FLAG_ESCAPED != 0 {
            return Err(Error::Unsupported(format!("flags {:#04x}", fixed[3])));
        }
        let sigma = u16::from_le_bytes([fixed[4], fixed[5]]) as usize;
        if sigma > 256 {
            return Err(corrupt(format!("alphabet size {sigma}")));
        }
        let alphabet = bytes.get(10..10 + sigma).ok_or_else(truncated)?.to_vec();
        if alphabet.windows(2).any(|w| w[0] >= w[1]) {
            return Err(corrupt("alphabet not strictly ascending"));
        }
        let at = 10 + sigma;
        let word = |i: usize| -> Result<u64> {
            let b = bytes.get(i..i + 8).ok_or_else(truncated)?;
            Ok(u64::from_le_bytes(b.try_into().unwrap()))
        };
        let (n, z) = (word(at)?, word(at + 8)?);
        if z > n || (n > 0 && sigma == 0) || (n == 0) != (z == 0) {
            return Err(corrupt(format!("inconsistent sizes n={n} z={z} sigma={sigma}")));
        }
        let escaped = fixed[3] & FLAG_ESCAPED != 0;
        Ok((Self { method, code, escaped, alphabet, n, z }, at + 16))
    }
}

/// Bits spent on each part of the payload.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PayloadBits {
    pub sign: u64,
    pub offset: u64,
    pub length: u64,
}

impl PayloadBits {
    pub fn total(&self) -> u64 {
        self.sign + self.offset + self.length
    }
}

/// A compressed file and its accounting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compressed {
    pub bytes: Vec<u8>,
    pub header: ContainerHeader,
    pub bits: PayloadBits,
}

/// Serializes a parsing of `text`.
pub fn write_container(text: &Text, parsing: &Parsing, method: Method, code: Code, escaped: bool) -> Result<Compressed> {
    if parsing.semantics != method.semantics() {
        return Err(invalid(format!("{method} expects {:?} offsets", method.semantics())));
    }
    if parsing.n() != text.n() {
        return Err(invalid("parsing does not cover the text"));
    }
    let header = ContainerHeader {
        method,
        code,
        escaped,
        alphabet: text.alphabet().to_vec(),
        n: text.n() as u64,
        z: parsing.z() as u64,
    };
    let mut bytes = Vec::with_capacity(header.byte_len());
    header.write(&mut bytes)?;
    let signed = method.semantics() == Semantics::Colex;
    let mut payload = BitStream::new();
    let mut bits = PayloadBits::default();
    for f in &parsing.factors {
        let before = payload.bit_len();
        if signed {
            signed_encode(f.off, code, &mut payload)?;
            bits.sign += 1;
        } else {
            if f.off < 1 {
                return Err(invalid(format!("textual offset {} must be positive", f.off)));
            }
            encode(code, f.off as u64, &mut payload)?;
        }
        let mid = payload.bit_len();
        encode(code, f.len as u64, &mut payload)?;
        bits.offset += (mid - before) as u64 - signed as u64;
        bits.length += (payload.bit_len() - mid) as u64;
    }
    bytes.extend_from_slice(payload.bytes());
    Ok(Compressed { bytes, header, bits })
}

/// Compresses `raw`, escaping zero bytes first when `escape` is set.
pub fn compress_detailed(raw: &[u8], method: Method, code: Code, escape: bool) -> Result<Compressed> {
    let escaped;
    let body = if escape {
        escaped = escape_zeros(raw);
        &escaped[..]
    } else {
        raw
    };
    let text = Text::from_bytes(body);
    let parsing = method.parse(&text, code)?;
    write_container(&text, &parsing, method, code, escape)
}

pub fn compress(raw: &[u8], method: Method, code: Code, escape: bool) -> Result<Vec<u8>> {
    Ok(compress_detailed(raw, method, code, escape)?.bytes)
}

/// Reads the factors of a container without decoding the body.
pub fn read_container(file: &[u8]) -> Result<(ContainerHeader, Parsing)> {
    let (header, at) = ContainerHeader::read(file)?;
    let mut payload = BitStream::from_bytes(file[at..].to_vec());
    let signed = header.method.semantics() == Semantics::Colex;
    let bad = |e: Error| match e {
        Error::Decode(m) => corrupt(m),
        other => other,
    };
    let mut factors = Vec::new();
    let mut covered = 0u64;
    for _ in 0..header.z {
        let off = if signed {
            signed_decode(header.code, &mut payload).map_err(bad)?
        } else {
            let off = decode(header.code, &mut payload).map_err(bad)?;
            i64::try_from(off).map_err(|_| corrupt("offset overflows"))?
        };
        let len = decode(header.code, &mut payload).map_err(bad)?;
        if len > header.n - covered {
            return Err(corrupt("factor lengths exceed n"));
        }
        covered += len;
        factors.push(Factor::new(off, len as usize));
    }
    if covered != header.n {
        return Err(corrupt("factor lengths fall short of n"));
    }
    if payload.remaining() >= 8 {
        return Err(corrupt("trailing bytes after payload"));
    }
    if payload.read_bits(payload.remaining() as u32).map_err(bad)? != 0 {
        return Err(corrupt("nonzero padding"));
    }
    Ok((header, Parsing::new(factors, header_semantics(signed))))
}

fn header_semantics(signed: bool) -> Semantics {
    if signed {
        Semantics::Colex
    } else {
        Semantics::Textual
    }
}

/// Restores the original bytes of a container.
pub fn decompress(file: &[u8]) -> Result<Vec<u8>> {
    let (header, parsing) = read_container(file)?;
    let sigma = header.sigma();
    let text = match parsing.semantics {
        Semantics::Textual => decode_text(&parsing, sigma)?,
        Semantics::Colex => holz_decode(&parsing, sigma)?,
    };
    let body: Vec<u8> = text.body().iter().map(|&c| header.alphabet[c as usize]).collect();
    if header.escaped {
        unescape_zeros(&body)
    } else {
        Ok(body)
    }
}

/// Payload bits as priced by the bit-optimal cost model.
pub fn priced_bits(parsing: &Parsing, code: Code) -> u64 {
    CostModel::new(code, parsing.semantics).parsing_bits(parsing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bit_string(bytes: &[u8], len: usize) -> String {
        (0..len).map(|i| if bytes[i / 8] & (0x80 >> (i % 8)) != 0 { '1' } else { '0' }).collect()
    }

    #[test]
    fn escape_examples() {
        assert_eq!(escape_zeros(&[0]), vec![254, 1]);
        assert_eq!(escape_zeros(&[254]), vec![254, 254]);
        assert_eq!(escape_zeros(&[1, 0, 2]), vec![1, 254, 1, 2]);
        assert!(unescape_zeros(&[254, 7]).is_err());
        assert!(unescape_zeros(&[254]).is_err());
        assert!(unescape_zeros(&[3, 0]).is_err());
    }

    #[test]
    fn abbabb_holz_gamma_payload() {
        let c = compress_detailed(b"abbabb", Method::Holz, Code::Gamma, false).unwrap();
        let at = c.header.byte_len();
        // (-1,1)(1,1)(4,2)(2,2): sign, gamma(|off|), gamma(len) per factor
        let want = ["1", "1", "1", "0", "1", "1", "0", "00100", "010", "0", "010", "010"].concat();
        assert_eq!(want.len(), 22);
        assert_eq!(c.bits.total(), 22);
        assert_eq!(bit_string(&c.bytes[at..], 22), want);
        assert_eq!(c.bytes.len(), at + 3);
        assert_eq!(c.bytes[at + 2] & 0b11, 0);
        assert_eq!(c.bits, PayloadBits { sign: 4, offset: 1 + 1 + 5 + 3, length: 1 + 1 + 3 + 3 });
        assert_eq!(&c.bytes[..4], MAGIC);
        assert_eq!(&c.bytes[8..12], &[2, 0, b'a', b'b']);
    }

    #[test]
    fn empty_input_is_header_only() {
        for m in Method::ALL {
            let c = compress(b"", m, Code::Delta, false).unwrap();
            assert_eq!(c.len(), 26);
            assert_eq!(decompress(&c).unwrap(), b"");
        }
    }

    #[test]
    fn header_errors() {
        let good = compress(b"hello hello", Method::Holz, Code::Delta, false).unwrap();
        let unsupported = |f: &[u8]| matches!(decompress(f), Err(Error::Unsupported(_)));
        let corrupted = |f: &[u8]| matches!(decompress(f), Err(Error::CorruptInput(_)));
        assert!(unsupported(b"ZIP!rest"));
        assert!(corrupted(b"HO"));
        for (i, v) in [(4, 2u8), (5, 9), (6, 3), (7, 4)] {
            let mut f = good.clone();
            f[i] = v;
            assert!(unsupported(&f), "byte {i}");
        }
        for cut in 0..good.len() {
            assert!(decompress(&good[..cut]).is_err(), "cut {cut}");
        }
        let mut extra = good.clone();
        extra.push(0);
        assert!(corrupted(&extra));
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
            assert_eq!(Method::from_id(m.id()), Some(m));
        }
        assert!("lz".parse::<Method>().is_err());
    }

    proptest! {
        #[test]
        fn escape_round_trip(raw in prop::collection::vec(any::<u8>(), 0..500)) {
            let e = escape_zeros(&raw);
            prop_assert!(!e.contains(&0));
            prop_assert_eq!(unescape_zeros(&e).unwrap(), raw);
        }

        #[test]
        fn round_trip_and_priced_bits(
            raw in prop::collection::vec(prop_oneof![Just(0u8), Just(97), Just(98), Just(254)], 0..300),
            m in 0u8..5,
            delta in any::<bool>(),
            escape in any::<bool>(),
        ) {
            let (m, code) = (Method::from_id(m).unwrap(), if delta { Code::Delta } else { Code::Gamma });
            let c = compress_detailed(&raw, m, code, escape).unwrap();
            prop_assert_eq!(&decompress(&c.bytes).unwrap(), &raw);
            let (h, p) = read_container(&c.bytes).unwrap();
            prop_assert_eq!(&h, &c.header);
            prop_assert_eq!(c.bits.total(), priced_bits(&p, code));
            prop_assert_eq!((c.bytes.len() - h.byte_len()) as u64, c.bits.total().div_ceil(8));
            prop_assert_eq!(compress(&raw, m, code, escape).unwrap(), c.bytes);
        }

        #[test]
        fn tampering_never_panics(seed in any::<u64>(), flips in 1usize..4) {
            use rand::{rngs::StdRng, Rng, SeedableRng};
            let mut rng = StdRng::seed_from_u64(seed);
            let raw: Vec<u8> = (0..rng.gen_range(1..200)).map(|_| rng.gen_range(b'a'..b'e')).collect();
            let m = Method::from_id(rng.gen_range(0..5)).unwrap();
            let mut f = compress(&raw, m, Code::Gamma, false).unwrap();
            for _ in 0..flips {
                let i = rng.gen_range(0..f.len());
                f[i] ^= 1 << rng.gen_range(0..8);
            }
            let _ = decompress(&f);
        }
    }
}
