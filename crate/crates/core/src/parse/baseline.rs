use super::lz::longest_previous;
use super::{Algo, Parse, Phrase, UNBOUNDED};
use crate::ledger::ChainLedger;
use crate::succinct::WaveletMatrix;
use crate::text::{SuffixArrays, Text};

/// Phrase count predicted for BAT-LZ1: `z` plus one per position whose LZ
/// chain is a positive multiple of `c + 1`.
pub fn batlz1_formula(lz: &Parse, c: u32) -> usize {
    if c == UNBOUNDED {
        return lz.z();
    }
    let ledger = lz.replay();
    let period = c as u64 + 1;
    let cuts = ledger.chains()[1..]
        .iter()
        .filter(|&&v| v > 0 && v as u64 % period == 0)
        .count();
    lz.z() + cuts
}

/// BAT-LZ1: cuts the LZ parse wherever the LZ chain is a positive multiple
/// of `c + 1`, making that symbol explicit.
///
/// Inside a phrase that overlaps its source, a piece after a cut copies
/// across the cut and may pick up one extra hop; such positions are cut too,
/// so the result can exceed [`batlz1_formula`].
pub fn batlz1(text: &Text, lz: &Parse, c: u32) -> Parse {
    let n = text.len();
    if c == UNBOUNDED {
        return Parse {
            algo: Algo::BatLz1,
            ..lz.clone()
        };
    }
    let lzc = lz.replay();
    let period = c as u64 + 1;
    let mut chain = vec![0u32; n + 1];
    let mut phrases = Vec::with_capacity(lz.z());
    let mut i = 1;
    for p in &lz.phrases {
        let s = p.source.unwrap_or(0);
        let b = i - s;
        let (mut a, mut src) = (i, s);
        for q in i..i + p.len {
            let v = chain[src + (q - a) % (a - src)] + 1;
            let l = lzc.chain(q) as u64;
            if (l > 0 && l % period == 0) || v > c {
                phrases.push(Phrase::copy(src, q - a, text.at(q)));
                chain[q] = 0;
                a = q + 1;
                src = s + (a - i) % b;
            } else {
                chain[q] = v;
            }
        }
        phrases.push(Phrase::copy(src, i + p.len - a, p.literal));
        i += p.len + 1;
    }
    Parse {
        phrases,
        n,
        c,
        algo: Algo::BatLz1,
    }
}

/// BAT-LZ2: LZ phrase selection, truncating each phrase at the first symbol
/// whose chain would exceed `c`; that symbol becomes explicit.
pub fn batlz2(text: &Text, sa: &SuffixArrays, wm: &WaveletMatrix, c: u32) -> Parse {
    let n = text.len();
    let mut ledger = ChainLedger::new(n, UNBOUNDED);
    let mut phrases = Vec::new();
    let mut i = 1;
    while i <= n {
        let (s, mut len) = longest_previous(text, sa, wm, i);
        if len > 0 {
            let b = i - s;
            if let Some(l) = (0..len).find(|&l| ledger.chain(s + l % b) >= c) {
                len = l;
            }
        }
        ledger.assign_chain(s, i, len);
        phrases.push(Phrase::copy(s, len, text.at(i + len)));
        i += len + 1;
    }
    Parse {
        phrases,
        n,
        c,
        algo: Algo::BatLz2,
    }
}
