//! LZ factorizations of byte texts with textual or co-lexicographic offsets.
//!
//! Every text is parsed after a virtual prefix holding one copy of each
//! alphabet symbol, so every factor is a copy. Greedy parsers ([`lz`],
//! [`holz`]) and bit-optimal ones ([`bitopt`]) share the [`container`]
//! format; [`stats`] characterizes corpora.

pub mod bitio;
pub mod error;
pub mod text;
pub mod wavelet;
pub mod suffix;
pub mod dynamic;
pub mod lz;
pub mod holz;
pub mod bitopt;
pub mod stats;
pub mod container;
