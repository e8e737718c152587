use super::greedy::GreedyEngine;
use super::{Algo, Parse, Phrase};
use crate::estree::{EnhancedSuffixTree, Mode};
use crate::ledger::ChainLedger;
use crate::rangemax::RmqForest;
use crate::text::{SuffixArrays, Text};
use crate::debug_asserts_enabled;

fn check_phrase(text: &Text, ledger: &ChainLedger, s: usize, i: usize, len: usize) {
    let t = text.padded();
    for l in 0..len {
        assert_eq!(t[s + l], t[i + l], "copy mismatch at {}", i + l);
        assert!(ledger.chain(i + l) <= ledger.bound(), "chain bound at {}", i + l);
    }
}

/// Minmax: follows `T[i..]` down the suffix tree while some seen occurrence
/// of the next node has all chains below `c`, and copies from the occurrence
/// minimising the largest chain.
pub fn minmax(text: &Text, _sa: &SuffixArrays, mut st: EnhancedSuffixTree, c: u32) -> Parse {
    let n = text.len();
    let mut ledger = ChainLedger::new(n, c);
    let mut phrases = Vec::new();
    let mut i = 1;
    while i <= n {
        let (s, len) = st.match_admissible(text, &ledger, i, Mode::Minmax);
        ledger.commit(s, i, len, |_, _| {});
        if debug_asserts_enabled() {
            check_phrase(text, &ledger, s, i, len);
        }
        st.update_annotations(&ledger, i, len, false);
        phrases.push(Phrase::copy(s, len, text.at(i + len)));
        i += len + 1;
    }
    Parse {
        phrases,
        n,
        c,
        algo: Algo::Minmax,
    }
}

/// Greedier: the Minmax descent, extended past a refused child through the
/// processed occurrence with the largest `D`, then grown with the greedy
/// engine so the phrase is always a longest valid one.
pub fn greedier(text: &Text, sa: &SuffixArrays, mut st: EnhancedSuffixTree, rf: RmqForest, c: u32) -> Parse {
    let n = text.len();
    let t = text.padded();
    let mut engine = GreedyEngine::new(text, sa, rf, c);
    let mut phrases = Vec::new();
    let mut i = 1;
    while i <= n {
        let (s0, len0) = st.match_admissible(text, engine.ledger(), i, Mode::Greedier);
        let (lb, rb) = st.interval(st.locus(t, i, len0));
        let (sp, ep, len) = engine.extend(i, lb, rb, len0, s0);
        let s = if len > len0 { engine.witness(i, sp, ep, len) } else { s0 };
        engine.commit(s, i, len);
        if debug_asserts_enabled() {
            check_phrase(text, engine.ledger(), s, i, len);
        }
        st.update_annotations(engine.ledger(), i, len, true);
        phrases.push(Phrase::copy(s, len, text.at(i + len)));
        i += len + 1;
    }
    Parse {
        phrases,
        n,
        c,
        algo: Algo::Greedier,
    }
}

#[cfg(test)]
mod tests {
    use crate::parse::{run, Algo, UNBOUNDED};
    use crate::text::Text;
    use crate::Space;
    use proptest::prelude::*;

    #[test]
    fn running_example() {
        let t = Text::ingest(b"alabaralalabarda").unwrap();
        let mm = run(&t, Algo::Minmax, 2, Space::Linear);
        mm.validate(&t).unwrap();
        assert!(mm.z() <= 8);
        let g = run(&t, Algo::Greedier, 2, Space::Linear);
        g.validate(&t).unwrap();
        assert_eq!(g.z(), 7);
    }

    proptest! {
        #[test]
        fn unbounded_matches_lz(bytes in proptest::collection::vec(0u8..4, 0..100)) {
            let t = Text::ingest(&bytes).unwrap();
            let lz: Vec<usize> = run(&t, Algo::Lz, UNBOUNDED, Space::Linear).phrases.iter().map(|p| p.len).collect();
            for algo in [Algo::Minmax, Algo::Greedier] {
                let p = run(&t, algo, UNBOUNDED, Space::Linear);
                let lens: Vec<usize> = p.phrases.iter().map(|p| p.len).collect();
                prop_assert_eq!(&lens, &lz);
            }
        }

        #[test]
        fn bounded_is_valid(bytes in proptest::collection::vec(0u8..3, 0..100), c in 1u32..4) {
            let t = Text::ingest(&bytes).unwrap();
            for algo in [Algo::Minmax, Algo::Greedier] {
                run(&t, algo, c, Space::Linear).validate(&t).unwrap();
            }
        }
    }
}
