use super::{narrow, Algo, Parse, Phrase, UNBOUNDED};
use crate::succinct::WaveletMatrix;
use crate::text::{SuffixArrays, Text};

/// Longest previous factor at `i`: `(leftmost source, length)`.
///
/// The SA range of `T[i..i+len)` is narrowed one symbol at a time and is
/// nonempty to the left of `i` iff its smallest stored position is below `i`.
pub(crate) fn longest_previous(text: &Text, sa: &SuffixArrays, wm: &WaveletMatrix, i: usize) -> (usize, usize) {
    let t = text.padded();
    let sa = sa.sa();
    let n = text.len();
    let (mut sp, mut ep) = (1, n);
    let mut len = 0;
    let mut src = 0;
    while i + len < n {
        let Some((a, b)) = narrow(t, sa, sp, ep, len, t[i + len]) else {
            break;
        };
        match wm.range_min(a, b) {
            Some(m) if (m as usize) < i => {
                src = m as usize;
                sp = a;
                ep = b;
                len += 1;
            }
            _ => break,
        }
    }
    (src, len)
}

/// Classic LZ: at every position the longest phrase with an earlier source.
pub fn lz(text: &Text, sa: &SuffixArrays, wm: &WaveletMatrix) -> Parse {
    let n = text.len();
    let mut phrases = Vec::new();
    let mut i = 1;
    while i <= n {
        let (s, len) = longest_previous(text, sa, wm, i);
        phrases.push(Phrase::copy(s, len, text.at(i + len)));
        i += len + 1;
    }
    Parse {
        phrases,
        n,
        c: UNBOUNDED,
        algo: Algo::Lz,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::run;
    use crate::Space;
    use proptest::prelude::*;

    fn lz_of(bytes: &[u8]) -> (Text, Parse) {
        let t = Text::ingest(bytes).unwrap();
        let p = run(&t, Algo::Lz, UNBOUNDED, Space::Linear);
        (t, p)
    }

    /// Naive longest previous factor by direct comparison.
    fn naive_lengths(t: &[u16]) -> Vec<usize> {
        let n = t.len();
        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            let best = (0..i)
                .map(|s| (0..).take_while(|&l| i + l < n - 1 && t[s + l] == t[i + l]).count())
                .max()
                .unwrap_or(0);
            out.push(best);
            i += best + 1;
        }
        out
    }

    #[test]
    fn running_example() {
        let (t, p) = lz_of(b"alabaralalabarda");
        assert_eq!(p.z(), 7);
        let lens: Vec<usize> = p.phrases.iter().map(|p| p.len).collect();
        assert_eq!(lens, vec![0, 0, 1, 1, 3, 4, 1]);
        assert_eq!(p.phrases[5].source, Some(3));
        let ledger = p.validate(&t).unwrap();
        assert_eq!(&ledger.chains()[1..], &[0, 0, 1, 0, 1, 0, 1, 1, 2, 0, 2, 1, 2, 1, 0, 1, 0]);
    }

    #[test]
    fn unary_run() {
        let (t, p) = lz_of(&[b'a'; 9]);
        assert_eq!(p.phrases, vec![Phrase::literal(1), Phrase::copy(1, 8, 0)]);
        p.validate(&t).unwrap();
    }

    proptest! {
        #[test]
        fn matches_naive(bytes in proptest::collection::vec(0u8..4, 0..64)) {
            let (t, p) = lz_of(&bytes);
            p.validate(&t).unwrap();
            let lens: Vec<usize> = p.phrases.iter().map(|p| p.len).collect();
            prop_assert_eq!(lens, naive_lengths(t.symbols()));
        }
    }
}
