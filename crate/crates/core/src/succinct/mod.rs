//! Rank bitvectors and the wavelet matrix used as the `(j, SA[j])` grid.

mod bitvec;
mod wavelet;

pub use bitvec::RankBitvector;
pub use wavelet::{Span, WaveletMatrix};
