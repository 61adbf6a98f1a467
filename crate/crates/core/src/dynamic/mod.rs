//! Dynamic succinct structures: an insert-only bit vector, sequences and
//! wavelet matrices built on it, and the dynamic BWT of a growing prefix.

mod bitvector;
mod bwt;
mod marks;
mod sequence;

pub use bitvector::DynBitVector;
pub use bwt::DynBwt;
pub use marks::InsertMarks;
pub use sequence::DynSequence;

/// A dynamic wavelet matrix over integers.
pub type DynWavelet = crate::wavelet::WaveletMatrix<DynBitVector>;
