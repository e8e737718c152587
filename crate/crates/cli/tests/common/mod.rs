//! Reference implementations used as test oracles. Deliberately naive: they
//! share no code with the library beyond its public data types.

#![allow(dead_code)]

use batlz_cli::gen::{generate, GenParams};
use batlz_core::{Parse, Text};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(source, copy length)` of each phrase, source 0 for literal phrases.
pub fn pairs(parse: &Parse) -> Vec<(usize, usize)> {
    parse.phrases.iter().map(|p| (p.source.unwrap_or(0), p.len)).collect()
}

/// Phrase start positions (1-based).
pub fn starts(phrases: &[(usize, usize)]) -> Vec<usize> {
    let mut pos = 1;
    phrases
        .iter()
        .map(|&(_, len)| {
            let s = pos;
            pos += len + 1;
            s
        })
        .collect()
}

/// Chain length of every covered position, by following copy hops one at a
/// time until an explicit symbol is reached. Index 0 is unused.
pub fn hop_chains(phrases: &[(usize, usize)]) -> Vec<u32> {
    let st = starts(phrases);
    let covered = phrases.iter().map(|&(_, len)| len + 1).sum::<usize>();
    let owner = |p: usize| st.iter().rposition(|&s| s <= p).unwrap();
    let mut out = vec![0u32; covered + 1];
    for (p, slot) in out.iter_mut().enumerate().skip(1) {
        let mut q = p;
        let mut hops = 0;
        loop {
            let k = owner(q);
            let (s, len) = phrases[k];
            let off = q - st[k];
            if off == len {
                break;
            }
            assert!(s >= 1 && s < st[k], "source {s} not left of {}", st[k]);
            q = s + off % (st[k] - s);
            hops += 1;
        }
        *slot = hops;
    }
    out
}

/// Text spelled by the phrases, copying one symbol at a time.
pub fn spell(phrases: &[(usize, usize)], literals: &[u16]) -> Vec<u16> {
    let mut t = vec![u16::MAX];
    for (&(s, len), &lit) in phrases.iter().zip(literals) {
        for l in 0..len {
            let v = t[s + l];
            t.push(v);
        }
        t.push(lit);
    }
    t
}

/// Every problem with `parse` as a parse of `text` under its own bound.
pub fn check_parse(text: &Text, parse: &Parse) -> Result<Vec<u32>, String> {
    let n = text.len();
    let ph = pairs(parse);
    let st = starts(&ph);
    for (k, &(s, len)) in ph.iter().enumerate() {
        if len > 0 && (s == 0 || s >= st[k]) {
            return Err(format!("phrase {k} at {} has source {s}", st[k]));
        }
    }
    let lits: Vec<u16> = parse.phrases.iter().map(|p| p.literal).collect();
    let spelled = spell(&ph, &lits);
    if spelled != text.padded()[..=n] {
        return Err("phrases do not spell the text".into());
    }
    let chains = hop_chains(&ph);
    if parse.c != u32::MAX {
        if let Some(p) = (1..=n).find(|&p| chains[p] > parse.c) {
            return Err(format!("chain {} at {p} exceeds {}", chains[p], parse.c));
        }
    }
    Ok(chains)
}

/// Longest copy at `i` with some source `s < i` that keeps every chain of the
/// phrase within `c`, given the chains of `T[1..i)`. Returns the length and
/// every source achieving it.
pub fn longest_valid(t: &[u16], n: usize, chains: &[u32], i: usize, c: u32) -> (usize, Vec<usize>) {
    let mut best = 0;
    let mut who = Vec::new();
    for s in 1..i {
        let b = i - s;
        let mut l = 0;
        while i + l < n && t[s + l] == t[i + l] && chains[s + l % b] < c {
            l += 1;
        }
        if l > best {
            best = l;
            who.clear();
        }
        if l == best && l > 0 {
            who.push(s);
        }
    }
    (best, who)
}

/// Replays `parse` step by step and checks that every phrase is a longest
/// valid copy with a valid source. Returns the number of phrases checked.
pub fn check_stepwise_maximal(text: &Text, parse: &Parse) -> Result<usize, String> {
    let n = text.len();
    let t = text.padded();
    let mut chains = vec![0u32; n + 1];
    let mut i = 1;
    for (k, p) in parse.phrases.iter().enumerate() {
        let (best, who) = longest_valid(t, n, &chains, i, parse.c);
        if p.len != best {
            return Err(format!("phrase {k} at {i}: length {} but longest valid is {best}", p.len));
        }
        if p.len > 0 {
            let s = p.source.unwrap_or(0);
            if !who.contains(&s) {
                return Err(format!("phrase {k} at {i}: source {s} not valid for length {best}"));
            }
            for l in 0..p.len {
                chains[i + l] = chains[s + l % (i - s)] + 1;
            }
        }
        chains[i + p.len] = 0;
        i += p.len + 1;
    }
    Ok(parse.phrases.len())
}

pub fn random_bytes(rng: &mut ChaCha8Rng, len: usize, sigma: u8) -> Vec<u8> {
    (0..len).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
}

fn fibonacci_word(len: usize) -> Vec<u8> {
    let (mut a, mut b) = (b"a".to_vec(), b"ab".to_vec());
    while b.len() < len {
        let next = [b.as_slice(), a.as_slice()].concat();
        a = b;
        b = next;
    }
    b.truncate(len);
    b
}

fn thue_morse(len: usize) -> Vec<u8> {
    (0..len).map(|k: usize| if k.count_ones() % 2 == 0 { b'a' } else { b'b' }).collect()
}

/// The fixed regression corpus: named inputs covering overlaps, tiny and
/// empty texts, periodic and aperiodic structure and the full byte range.
pub fn regression_corpus() -> Vec<(String, Vec<u8>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v: Vec<(String, Vec<u8>)> = vec![
        ("empty".into(), Vec::new()),
        ("single".into(), b"x".to_vec()),
        ("running".into(), b"alabaralalabarda".to_vec()),
        ("mississippi".into(), b"mississippi".to_vec()),
        ("bandana".into(), b"banana bandana banana".to_vec()),
        ("a100".into(), vec![b'a'; 100]),
        ("ab50".into(), b"ab".repeat(50)),
        ("abc_run".into(), b"abcabcabcabcabdabcabcabcabcabd".repeat(4)),
        ("fib233".into(), fibonacci_word(233)),
        ("thue256".into(), thue_morse(256)),
        (
            "prose".into(),
            b"it was the best of times, it was the worst of times, it was the age of wisdom, \
              it was the age of foolishness, it was the epoch of belief"
                .repeat(3),
        ),
    ];
    v.push(("bin300".into(), random_bytes(&mut rng, 300, 2)));
    v.push(("dna500".into(), random_bytes(&mut rng, 500, 4)));
    v.push(("bytes200".into(), (0..200).map(|_| rng.gen()).collect()));
    v.push((
        "gen".into(),
        generate(&GenParams {
            seed_size: 64,
            copies: 20,
            mutation_rate: 0.02,
            rng_seed: 11,
        }),
    ));
    v
}
