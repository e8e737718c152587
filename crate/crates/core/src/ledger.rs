use std::io::Write;

/// Chain bound meaning "no bound".
pub const UNBOUNDED: u32 = u32::MAX;

/// Chain lengths `C`, saturation distances `D` and the `k'` frontier of a
/// parse in progress.
///
/// Positions are 1-based; index 0 of every array is unused. `D` holds
/// `n + 1` for infinity.
#[derive(Clone, Debug)]
pub struct ChainLedger {
    n: usize,
    c: u32,
    chain: Vec<u32>,
    dist: Vec<u32>,
    k_prime: usize,
    filled: usize,
    pad: usize,
    tree: Vec<u32>,
}

impl ChainLedger {
    pub fn new(n: usize, c: u32) -> ChainLedger {
        let pad = n.next_power_of_two().max(1);
        ChainLedger {
            n,
            c,
            chain: vec![0; n + 1],
            dist: vec![n as u32 + 1; n + 1],
            k_prime: 0,
            filled: 0,
            pad,
            tree: vec![0; 2 * pad],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bound(&self) -> u32 {
        self.c
    }

    pub fn inf(&self) -> u32 {
        self.n as u32 + 1
    }

    /// Number of positions assigned so far; they form the prefix `1..=filled`.
    pub fn filled(&self) -> usize {
        self.filled
    }

    pub fn k_prime(&self) -> usize {
        self.k_prime
    }

    /// `C` with a pad at index 0. Entries past [`filled`](Self::filled) are zero.
    pub fn chains(&self) -> &[u32] {
        &self.chain
    }

    /// `D` with a pad at index 0.
    pub fn dists(&self) -> &[u32] {
        &self.dist
    }

    #[inline]
    pub fn chain(&self, pos: usize) -> u32 {
        self.chain[pos]
    }

    #[inline]
    pub fn dist(&self, pos: usize) -> u32 {
        self.dist[pos]
    }

    fn set_chain(&mut self, pos: usize, v: u32) {
        self.chain[pos] = v;
        let mut x = self.pad + pos - 1;
        self.tree[x] = v;
        while x > 1 {
            x /= 2;
            let m = self.tree[2 * x].max(self.tree[2 * x + 1]);
            if self.tree[x] == m {
                break;
            }
            self.tree[x] = m;
        }
    }

    /// Assigns chains to the phrase `T[i..=i+len]` copied from `s`. The
    /// explicit symbol at `i + len` gets chain 0. When the phrase overlaps
    /// its source the chains repeat with period `i - s`.
    pub fn assign_chain(&mut self, s: usize, i: usize, len: usize) {
        assert_eq!(i, self.filled + 1, "phrases must be assigned left to right");
        assert!(i + len <= self.n, "phrase past the end of the text");
        if len > 0 {
            assert!(1 <= s && s < i, "source {s} must precede phrase start {i}");
            let period = i - s;
            for l in 0..len {
                let v = self.chain[s + l % period] + 1;
                self.set_chain(i + l, v);
            }
        }
        self.set_chain(i + len, 0);
        self.filled = i + len;
    }

    /// Records that `t` reached the bound: `D[k] = t - k` for `k' < k <= t`.
    /// Returns the changed entries.
    pub fn register_saturation(&mut self, t: usize) -> Vec<(usize, u32)> {
        assert_eq!(self.chain[t], self.c, "position {t} is not saturated");
        assert!(t > self.k_prime, "position {t} saturated twice");
        let updates: Vec<(usize, u32)> = (self.k_prime + 1..=t).map(|k| (k, (t - k) as u32)).collect();
        for &(k, d) in &updates {
            self.dist[k] = d;
        }
        self.k_prime = t;
        updates
    }

    /// Assigns the phrase and registers every saturation it creates, passing
    /// each `D` change to `on_update`.
    pub fn commit(&mut self, s: usize, i: usize, len: usize, mut on_update: impl FnMut(usize, u32)) {
        self.assign_chain(s, i, len);
        for t in i..=i + len {
            if self.chain[t] == self.c {
                for (k, d) in self.register_saturation(t) {
                    on_update(k, d);
                }
            }
        }
    }

    /// `max C[a..=b]` over assigned positions.
    pub fn cmax(&self, a: usize, b: usize) -> u32 {
        assert!(1 <= a && a <= b && b <= self.filled, "cmax over unassigned range {a}..={b}");
        let (mut l, mut r) = (self.pad + a - 1, self.pad + b);
        let mut m = 0;
        while l < r {
            if l & 1 == 1 {
                m = m.max(self.tree[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                m = m.max(self.tree[r]);
            }
            l >>= 1;
            r >>= 1;
        }
        m
    }

    /// Replays a phrase list given as `(source, copy length)` pairs, source 0
    /// for literal phrases.
    pub fn replay(n: usize, c: u32, phrases: impl IntoIterator<Item = (usize, usize)>) -> ChainLedger {
        let mut ledger = ChainLedger::new(n, c);
        for (s, len) in phrases {
            let i = ledger.filled + 1;
            ledger.assign_chain(s, i, len);
        }
        ledger
    }

    pub fn max_chain(&self) -> u32 {
        self.tree[1]
    }

    pub fn mean_chain(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        self.chain[1..].iter().map(|&v| v as f64).sum::<f64>() / self.n as f64
    }

    /// `hist[v]` is the number of positions with chain length `v`.
    pub fn histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.max_chain() as usize + 1];
        for &v in &self.chain[1..] {
            hist[v as usize] += 1;
        }
        hist
    }

    /// Writes the histogram as `chain_length,count` lines under a header.
    pub fn write_histogram(&self, mut out: impl Write) -> std::io::Result<()> {
        writeln!(out, "chain_length,count")?;
        for (len, count) in self.histogram().into_iter().enumerate() {
            if count > 0 {
                writeln!(out, "{len},{count}")?;
            }
        }
        Ok(())
    }
}
