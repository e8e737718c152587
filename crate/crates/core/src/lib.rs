//! Bounded Access Time Lempel-Ziv (BAT-LZ).
//!
//! A BAT-LZ parse is a leftward parse of a text in which no symbol is more
//! than `c` copy hops away from an explicitly stored symbol, so any position
//! of the compressed text can be extracted in `O(c)` steps.
//!
//! The crate is organised bottom-up:
//!
//! * [`text`] ingests bytes and builds suffix arrays,
//! * [`succinct`] provides rank bitvectors and the wavelet matrix over `SA`,
//! * [`rangemax`] is the dynamic 5-sided range structure driving the greedy parser,
//! * [`ledger`] keeps chain lengths `C` and saturation distances `D`,
//! * [`estree`] is the annotated suffix tree used by Minmax and Greedier,
//! * [`parse`] holds the six parsers,
//! * [`codec`] serialises parses, decompresses and extracts.
//!
//! Positions are 1-based everywhere in the public API: text positions run
//! over `1..=n` with the sentinel at `n`, and suffix array ranks likewise.

pub mod codec;
pub mod error;
pub mod estree;
pub mod ledger;
pub mod parse;
pub mod rangemax;
pub mod succinct;
pub mod text;

pub use codec::{CompressedFile, Extraction};
pub use error::{Error, Result};
pub use estree::{EnhancedSuffixTree, Mode};
pub use ledger::ChainLedger;
pub use parse::{Algo, Parse, Phrase, Workspace, UNBOUNDED};
pub use rangemax::{RmqForest, Space};
pub use succinct::{RankBitvector, WaveletMatrix};
pub use text::{SuffixArrays, Text};

/// Returns true when `BATLZ_DEBUG_ASSERT=1` is set, enabling in-loop checks.
pub fn debug_asserts_enabled() -> bool {
    use std::sync::OnceLock;
    static FLAG: OnceLock<bool> = OnceLock::new();
    *FLAG.get_or_init(|| {
        std::env::var("BATLZ_DEBUG_ASSERT")
            .map(|v| v == "1")
            .unwrap_or(false)
    })
}
