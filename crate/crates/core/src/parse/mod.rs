//! Leftward parsers.
//!
//! All parsers produce a [`Parse`]: phrases `(s, len, literal)` covering the
//! text left to right, where `T[i..i+len)` is copied from `T[s..s+len)` and
//! the symbol at `i + len` is stored explicitly. The last literal is always
//! the sentinel.

mod baseline;
mod greedy;
mod lz;
mod minmax;

use std::fmt;
use std::str::FromStr;

pub use crate::ledger::UNBOUNDED;
use crate::estree::EnhancedSuffixTree;
use crate::ledger::ChainLedger;
use crate::rangemax::{RmqForest, Space};
use crate::succinct::WaveletMatrix;
use crate::text::{SuffixArrays, Text};
use crate::{Error, Result};

pub use baseline::{batlz1, batlz1_formula, batlz2};
pub use greedy::{greedy, GreedyEngine};
pub use lz::lz;
pub use minmax::{greedier, minmax};

/// One phrase: `len` copied symbols followed by one explicit symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phrase {
    /// 1-based source start; `None` iff `len == 0`.
    pub source: Option<usize>,
    pub len: usize,
    /// Dense code of the explicit symbol.
    pub literal: u16,
}

impl Phrase {
    pub fn literal(code: u16) -> Phrase {
        Phrase {
            source: None,
            len: 0,
            literal: code,
        }
    }

    pub fn copy(source: usize, len: usize, literal: u16) -> Phrase {
        if len == 0 {
            return Phrase::literal(literal);
        }
        Phrase {
            source: Some(source),
            len,
            literal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algo {
    Lz,
    BatLz1,
    BatLz2,
    Greedy,
    Minmax,
    Greedier,
}

impl Algo {
    pub const ALL: [Algo; 6] = [
        Algo::Lz,
        Algo::BatLz1,
        Algo::BatLz2,
        Algo::Greedy,
        Algo::Minmax,
        Algo::Greedier,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Lz => "lz",
            Algo::BatLz1 => "batlz1",
            Algo::BatLz2 => "batlz2",
            Algo::Greedy => "greedy",
            Algo::Minmax => "minmax",
            Algo::Greedier => "greedier",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algo> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown algorithm {s:?}")))
    }
}

/// A complete parse of a text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parse {
    pub phrases: Vec<Phrase>,
    pub n: usize,
    /// Chain bound; [`UNBOUNDED`] for classic LZ.
    pub c: u32,
    pub algo: Algo,
}

impl Parse {
    /// Number of phrases.
    pub fn z(&self) -> usize {
        self.phrases.len()
    }

    /// 1-based start of every phrase.
    pub fn starts(&self) -> Vec<usize> {
        let mut pos = 1;
        self.phrases
            .iter()
            .map(|p| {
                let start = pos;
                pos += p.len + 1;
                start
            })
            .collect()
    }

    /// Chain lengths of the parse (no saturation bookkeeping).
    pub fn replay(&self) -> ChainLedger {
        ChainLedger::replay(
            self.n,
            self.c,
            self.phrases.iter().map(|p| (p.source.unwrap_or(0), p.len)),
        )
    }

    /// Checks that the parse spells `text`, every copy is leftward and every
    /// chain is within the bound. Returns the replayed ledger.
    pub fn validate(&self, text: &Text) -> Result<ChainLedger> {
        let n = text.len();
        let t = text.padded();
        let bad = |pos: usize, reason: String| Err(Error::Corrupt { pos, reason });
        if self.n != n {
            return bad(0, format!("parse length {} differs from text length {n}", self.n));
        }
        let mut i = 1;
        for (idx, p) in self.phrases.iter().enumerate() {
            if i + p.len > n {
                return bad(i, format!("phrase {} runs past the end", idx + 1));
            }
            match (p.source, p.len) {
                (None, 0) => {}
                (Some(s), len) if len > 0 => {
                    if s == 0 || s >= i {
                        return bad(i, format!("source {s} is not left of {i}"));
                    }
                    if let Some(l) = (0..len).find(|&l| t[s + l] != t[i + l]) {
                        return bad(i + l, "copied symbol differs".into());
                    }
                }
                _ => return bad(i, "source set iff copy length is positive".into()),
            }
            if t[i + p.len] != p.literal {
                return bad(i + p.len, "explicit symbol differs".into());
            }
            i += p.len + 1;
        }
        if i != n + 1 {
            return bad(i, "phrases do not cover the text".into());
        }
        let ledger = self.replay();
        if self.c != UNBOUNDED {
            if let Some(pos) = (1..=n).find(|&p| ledger.chain(p) > self.c) {
                return bad(pos, format!("chain {} exceeds {}", ledger.chain(pos), self.c));
            }
        }
        Ok(ledger)
    }
}

/// Narrows the SA range `[sp, ep]` of the suffixes sharing a prefix of
/// length `depth` to those continuing with `ch`.
pub(crate) fn narrow(
    t: &[u16],
    sa: &[u32],
    sp: usize,
    ep: usize,
    depth: usize,
    ch: u16,
) -> Option<(usize, usize)> {
    let key = |r: usize| t[sa[r] as usize + depth];
    if sp == ep {
        return (key(sp) == ch).then_some((sp, ep));
    }
    let first = partition(sp, ep + 1, |r| key(r) < ch);
    let last = partition(first, ep + 1, |r| key(r) <= ch);
    (first < last).then(|| (first, last - 1))
}

/// First `r` in `[lo, hi)` for which `pred` is false, assuming `pred` is
/// monotone (true then false).
fn partition(mut lo: usize, mut hi: usize, pred: impl Fn(usize) -> bool) -> usize {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Structures shared by the parsers for one text.
pub struct Workspace<'a> {
    pub text: &'a Text,
    pub sa: SuffixArrays,
}

impl<'a> Workspace<'a> {
    pub fn new(text: &'a Text) -> Workspace<'a> {
        Workspace {
            text,
            sa: SuffixArrays::build(text),
        }
    }

    /// Wavelet matrix over `SA[1..=n]`.
    pub fn wavelet(&self) -> WaveletMatrix {
        WaveletMatrix::build(&self.sa.sa()[1..]).expect("suffix array is a permutation")
    }

    pub fn forest(&self, space: Space) -> RmqForest {
        let n = self.text.len();
        let d = vec![n as u32 + 1; n + 1];
        RmqForest::build(self.wavelet(), self.sa.isa(), &d, space)
    }

    pub fn suffix_tree(&self) -> EnhancedSuffixTree {
        EnhancedSuffixTree::build(self.text, &self.sa)
    }

    /// Runs `algo` with bound `c` (ignored by classic LZ).
    pub fn run(&self, algo: Algo, c: u32, space: Space) -> Parse {
        match algo {
            Algo::Lz => lz(self.text, &self.sa, &self.wavelet()),
            Algo::BatLz1 => batlz1(self.text, &lz(self.text, &self.sa, &self.wavelet()), c),
            Algo::BatLz2 => batlz2(self.text, &self.sa, &self.wavelet(), c),
            Algo::Greedy => greedy(self.text, &self.sa, self.forest(space), c),
            Algo::Minmax => minmax(self.text, &self.sa, self.suffix_tree(), c),
            Algo::Greedier => greedier(self.text, &self.sa, self.suffix_tree(), self.forest(space), c),
        }
    }
}

/// Parses `text` with `algo` and bound `c`.
pub fn run(text: &Text, algo: Algo, c: u32, space: Space) -> Parse {
    Workspace::new(text).run(algo, c, space)
}
