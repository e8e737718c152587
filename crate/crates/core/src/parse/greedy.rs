use super::{narrow, Algo, Parse, Phrase};
use crate::ledger::ChainLedger;
use crate::rangemax::RmqForest;
use crate::text::{SuffixArrays, Text};
use crate::debug_asserts_enabled;

/// Incremental state of the greedy parser: the ledger and the forest over
/// `(j, SA[j], D[SA[j]])`, kept in sync.
///
/// A source `s` is valid for a copy of length `len` at `i` iff `s < i`,
/// `T[s..s+len) = T[i..i+len)` and `D[s] >= len`.
pub struct GreedyEngine<'a> {
    text: &'a Text,
    sa: &'a SuffixArrays,
    rf: RmqForest,
    ledger: ChainLedger,
}

impl<'a> GreedyEngine<'a> {
    pub fn new(text: &'a Text, sa: &'a SuffixArrays, rf: RmqForest, c: u32) -> GreedyEngine<'a> {
        let ledger = ChainLedger::new(text.len(), c);
        GreedyEngine { text, sa, rf, ledger }
    }

    pub fn ledger(&self) -> &ChainLedger {
        &self.ledger
    }

    pub fn forest(&self) -> &RmqForest {
        &self.rf
    }

    /// Grows a valid copy of length `len` at `i` one symbol at a time while
    /// some source stays valid. `[sp, ep]` is the SA range of `T[i..i+len)`
    /// and `w` a valid source for it (0 when `len == 0` or unknown).
    /// Returns the final `(sp, ep, len)`.
    pub fn extend(&self, i: usize, mut sp: usize, mut ep: usize, mut len: usize, mut w: usize) -> (usize, usize, usize) {
        let t = self.text.padded();
        let sa = self.sa.sa();
        let n = self.text.len();
        while i + len < n {
            let ch = t[i + len];
            let Some((a, b)) = narrow(t, sa, sp, ep, len, ch) else {
                break;
            };
            let reuse = w != 0 && t[w + len] == ch && self.ledger.dist(w) as usize > len;
            if !reuse {
                match self.rf.query(a, b, 1, i, len + 1) {
                    Some(s) => w = s,
                    None => break,
                }
            }
            sp = a;
            ep = b;
            len += 1;
        }
        (sp, ep, len)
    }

    /// First valid source in traversal order for the copy of length `len`
    /// whose SA range is `[sp, ep]`.
    pub fn witness(&self, i: usize, sp: usize, ep: usize, len: usize) -> usize {
        if len == 0 {
            return 0;
        }
        self.rf
            .query(sp, ep, 1, i, len)
            .expect("extended copy has a valid source")
    }

    /// `(source, length)` of the longest valid copy at `i`.
    pub fn longest_valid(&self, i: usize) -> (usize, usize) {
        let (sp, ep, len) = self.extend(i, 1, self.text.len(), 0, 0);
        (self.witness(i, sp, ep, len), len)
    }

    /// Emits the phrase and propagates the saturations it causes.
    pub fn commit(&mut self, s: usize, i: usize, len: usize) {
        let rf = &mut self.rf;
        self.ledger
            .commit(s, i, len, |k, d| rf.update(k, d).expect("position in range"));
        if debug_asserts_enabled() {
            let t = self.text.padded();
            for l in 0..len {
                assert_eq!(t[s + l], t[i + l], "copy mismatch at {}", i + l);
                assert!(self.ledger.chain(i + l) <= self.ledger.bound(), "chain bound at {}", i + l);
            }
        }
    }
}

/// Greedy BAT-LZ: at every position the longest copy with a valid source.
pub fn greedy(text: &Text, sa: &SuffixArrays, rf: RmqForest, c: u32) -> Parse {
    let n = text.len();
    let mut engine = GreedyEngine::new(text, sa, rf, c);
    let mut phrases = Vec::new();
    let mut i = 1;
    while i <= n {
        let (s, len) = engine.longest_valid(i);
        engine.commit(s, i, len);
        phrases.push(Phrase::copy(s, len, text.at(i + len)));
        i += len + 1;
    }
    Parse {
        phrases,
        n,
        c,
        algo: Algo::Greedy,
    }
}
