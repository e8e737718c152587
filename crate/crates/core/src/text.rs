//! Text ingestion and suffix array construction.
//!
//! All arrays here carry an unused slot at index 0 so that text positions and
//! suffix array ranks can be used directly as 1-based indices.

use crate::error::{Error, Result};

/// Code of the end-of-text marker. It is the unique smallest symbol.
pub const SENTINEL: u16 = 0;

/// Largest supported `n` (text length including the sentinel). One extra
/// value above `n` is reserved to represent an infinite saturation distance.
pub const MAX_LEN: usize = (u32::MAX - 2) as usize;

const PAD: u16 = u16::MAX;

/// A byte string remapped to a dense alphabet, terminated by the sentinel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text {
    symbols: Vec<u16>,
    sigma: usize,
    decode_map: Vec<u8>,
}

impl Text {
    /// Remaps `bytes` to codes `1..sigma` in increasing byte order and appends
    /// the sentinel (code 0).
    pub fn ingest(bytes: &[u8]) -> Result<Text> {
        if bytes.len() >= MAX_LEN {
            return Err(Error::TooLarge(bytes.len()));
        }
        let mut present = [false; 256];
        for &b in bytes {
            present[b as usize] = true;
        }
        let mut decode_map = vec![0u8];
        let mut encode = [0u16; 256];
        for b in 0..256usize {
            if present[b] {
                encode[b] = decode_map.len() as u16;
                decode_map.push(b as u8);
            }
        }
        let mut symbols = Vec::with_capacity(bytes.len() + 2);
        symbols.push(PAD);
        symbols.extend(bytes.iter().map(|&b| encode[b as usize]));
        symbols.push(SENTINEL);
        Ok(Text {
            symbols,
            sigma: decode_map.len(),
            decode_map,
        })
    }

    /// Rebuilds a text from codes (sentinel included as the last code) and
    /// the code-to-byte map. Used when loading compressed files.
    pub fn from_codes(codes: &[u16], decode_map: Vec<u8>) -> Result<Text> {
        let sigma = decode_map.len();
        match codes.split_last() {
            Some((&SENTINEL, body)) if body.iter().all(|&c| c != SENTINEL && (c as usize) < sigma) => {}
            _ => return Err(Error::Format("code sequence is not sentinel-terminated".into())),
        }
        let mut symbols = Vec::with_capacity(codes.len() + 1);
        symbols.push(PAD);
        symbols.extend_from_slice(codes);
        Ok(Text {
            symbols,
            sigma,
            decode_map,
        })
    }

    /// Length including the sentinel.
    pub fn len(&self) -> usize {
        self.symbols.len() - 1
    }

    /// A text always holds at least the sentinel.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn decode_map(&self) -> &[u8] {
        &self.decode_map
    }

    /// Symbol at 1-based position `pos`.
    #[inline]
    pub fn at(&self, pos: usize) -> u16 {
        self.symbols[pos]
    }

    /// Codes `T[1..=n]`, sentinel included.
    pub fn symbols(&self) -> &[u16] {
        &self.symbols[1..]
    }

    /// Codes with the unused slot at index 0, so `padded()[p] == at(p)`.
    #[inline]
    pub fn padded(&self) -> &[u16] {
        &self.symbols
    }

    /// Original byte for a non-sentinel code.
    pub fn byte_of(&self, code: u16) -> u8 {
        self.decode_map[code as usize]
    }

    /// The original bytes, sentinel stripped.
    pub fn decode(&self) -> Vec<u8> {
        let n = self.len();
        self.symbols[1..n]
            .iter()
            .map(|&c| self.decode_map[c as usize])
            .collect()
    }
}

/// Suffix array and its inverse, both 1-based with a pad at index 0.
#[derive(Clone, Debug)]
pub struct SuffixArrays {
    sa: Vec<u32>,
    isa: Vec<u32>,
}

impl SuffixArrays {
    pub fn build(text: &Text) -> SuffixArrays {
        let n = text.len();
        let codes: Vec<u32> = text.symbols().iter().map(|&c| c as u32).collect();
        let raw = sais(&codes, text.sigma().max(1));
        let mut sa = Vec::with_capacity(n + 1);
        sa.push(0);
        sa.extend(raw.iter().map(|&p| p + 1));
        let mut isa = vec![0u32; n + 1];
        for (rank, &pos) in sa.iter().enumerate().skip(1) {
            isa[pos as usize] = rank as u32;
        }
        SuffixArrays { sa, isa }
    }

    pub fn len(&self) -> usize {
        self.sa.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `SA` with a pad at index 0.
    pub fn sa(&self) -> &[u32] {
        &self.sa
    }

    /// `ISA` with a pad at index 0.
    pub fn isa(&self) -> &[u32] {
        &self.isa
    }

    /// `lcp[r]` is the longest common prefix of the suffixes ranked `r-1` and
    /// `r` (Kasai et al.); `lcp[0]` and `lcp[1]` are zero.
    pub fn lcp(&self, text: &Text) -> Vec<u32> {
        let n = self.len();
        let t = text.padded();
        let mut lcp = vec![0u32; n + 1];
        let mut h = 0usize;
        for pos in 1..=n {
            let rank = self.isa[pos] as usize;
            if rank > 1 {
                let prev = self.sa[rank - 1] as usize;
                while pos + h <= n && prev + h <= n && t[pos + h] == t[prev + h] {
                    h += 1;
                }
                lcp[rank] = h as u32;
                h = h.saturating_sub(1);
            } else {
                h = 0;
            }
        }
        lcp
    }
}

const EMPTY: u32 = u32::MAX;

/// SA-IS suffix sorting. `s` must end with a unique smallest symbol 0 and use
/// symbols below `k`. Returns 0-based suffix starts.
fn sais(s: &[u32], k: usize) -> Vec<u32> {
    let n = s.len();
    if n == 1 {
        return vec![0];
    }
    let mut stype = vec![false; n];
    stype[n - 1] = true;
    for i in (0..n - 1).rev() {
        stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];

    let mut counts = vec![0u32; k];
    for &c in s {
        counts[c as usize] += 1;
    }

    let mut sa = vec![EMPTY; n];
    let mut tails = bucket_ends(&counts);
    for i in 1..n {
        if is_lms(i) {
            let c = s[i] as usize;
            tails[c] -= 1;
            sa[tails[c] as usize] = i as u32;
        }
    }
    induce(s, &mut sa, &stype, &counts);

    // Compact the sorted LMS positions and name their substrings.
    let mut m = 0;
    for idx in 0..n {
        let p = sa[idx] as usize;
        if is_lms(p) {
            sa[m] = p as u32;
            m += 1;
        }
    }
    for x in sa[m..].iter_mut() {
        *x = EMPTY;
    }
    let mut names = 0u32;
    let mut prev: Option<usize> = None;
    for idx in 0..m {
        let p = sa[idx] as usize;
        let differs = match prev {
            None => true,
            Some(q) => lms_differs(s, &stype, p, q),
        };
        if differs {
            names += 1;
            prev = Some(p);
        }
        sa[m + p / 2] = names - 1;
    }
    let mut j = n;
    for i in (m..n).rev() {
        if sa[i] != EMPTY {
            j -= 1;
            sa[j] = sa[i];
        }
    }
    let reduced: Vec<u32> = sa[n - m..].to_vec();
    let reduced_sa = if (names as usize) < m {
        sais(&reduced, names as usize)
    } else {
        let mut direct = vec![0u32; m];
        for (i, &name) in reduced.iter().enumerate() {
            direct[name as usize] = i as u32;
        }
        direct
    };

    let lms: Vec<u32> = (1..n).filter(|&i| is_lms(i)).map(|i| i as u32).collect();
    sa.iter_mut().for_each(|x| *x = EMPTY);
    let mut tails = bucket_ends(&counts);
    for idx in (0..m).rev() {
        let p = lms[reduced_sa[idx] as usize] as usize;
        let c = s[p] as usize;
        tails[c] -= 1;
        sa[tails[c] as usize] = p as u32;
    }
    induce(s, &mut sa, &stype, &counts);
    sa
}

fn bucket_starts(counts: &[u32]) -> Vec<u32> {
    let mut sum = 0;
    counts
        .iter()
        .map(|&c| {
            let start = sum;
            sum += c;
            start
        })
        .collect()
}

fn bucket_ends(counts: &[u32]) -> Vec<u32> {
    let mut sum = 0;
    counts
        .iter()
        .map(|&c| {
            sum += c;
            sum
        })
        .collect()
}

fn induce(s: &[u32], sa: &mut [u32], stype: &[bool], counts: &[u32]) {
    let n = s.len();
    let mut heads = bucket_starts(counts);
    for idx in 0..n {
        let p = sa[idx];
        if p != EMPTY && p > 0 {
            let j = p as usize - 1;
            if !stype[j] {
                let c = s[j] as usize;
                sa[heads[c] as usize] = j as u32;
                heads[c] += 1;
            }
        }
    }
    let mut tails = bucket_ends(counts);
    for idx in (0..n).rev() {
        let p = sa[idx];
        if p != EMPTY && p > 0 {
            let j = p as usize - 1;
            if stype[j] {
                let c = s[j] as usize;
                tails[c] -= 1;
                sa[tails[c] as usize] = j as u32;
            }
        }
    }
}

fn lms_differs(s: &[u32], stype: &[bool], p: usize, q: usize) -> bool {
    let n = s.len();
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];
    for d in 0.. {
        if p + d >= n || q + d >= n {
            return true;
        }
        let (pl, ql) = (d > 0 && is_lms(p + d), d > 0 && is_lms(q + d));
        if pl && ql {
            return false;
        }
        if pl != ql || s[p + d] != s[q + d] || stype[p + d] != stype[q + d] {
            return true;
        }
    }
    unreachable!()
}
