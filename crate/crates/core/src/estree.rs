//! Suffix tree with the chain annotations used by Minmax and Greedier.

use crate::ledger::ChainLedger;
use crate::text::{SuffixArrays, Text};

const NONE: u32 = u32::MAX;
/// `minmax` value of a node none of whose occurrences has been seen.
pub const UNSEEN: u32 = u32::MAX;

/// Parser flavour driving [`EnhancedSuffixTree::match_admissible`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Minmax,
    Greedier,
}

/// Where a descent along `T[i..]` stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Descent {
    /// Deepest node reached.
    pub node: usize,
    /// The child of `node` on the path of `T[i..]` that was refused, if any.
    pub blocked: Option<usize>,
}

/// Suffix tree of a text built from its suffix and LCP arrays.
///
/// Leaves are numbered by suffix rank: the leaf of the suffix ranked `r` has
/// id `r - 1`. Internal nodes follow, the root last. Every node stores the
/// SA interval `lb..=rb` of the suffixes below it.
#[derive(Clone, Debug)]
pub struct EnhancedSuffixTree {
    n: usize,
    root: usize,
    parent: Vec<u32>,
    sd: Vec<u32>,
    lb: Vec<u32>,
    rb: Vec<u32>,
    /// `SA[lb]` per node: a text position where the node label occurs.
    rep: Vec<u32>,
    kid_start: Vec<u32>,
    kids: Vec<u32>,
    /// `E[j]` with a pad at index 0.
    e: Vec<u32>,
    isa: Vec<u32>,
    minmax: Vec<u32>,
    txtpos: Vec<u32>,
    real: Vec<bool>,
    bestd: Vec<u32>,
}

impl EnhancedSuffixTree {
    pub fn build(text: &Text, sa: &SuffixArrays) -> EnhancedSuffixTree {
        let n = text.len();
        let lcp = sa.lcp(text);
        let sav = sa.sa();

        let mut parent = vec![NONE; n];
        let mut sd: Vec<u32> = (1..=n).map(|r| (n + 1 - sav[r] as usize) as u32).collect();
        let mut lb: Vec<u32> = (1..=n as u32).collect();
        let mut rb = lb.clone();
        let mut kid_lists: Vec<Vec<u32>> = Vec::new();

        // Open intervals: (lcp value, left bound, children so far).
        let mut stack: Vec<(u32, u32, Vec<u32>)> = vec![(0, 1, Vec::new())];
        for r in 2..=n + 1 {
            let l = if r <= n { lcp[r] } else { 0 };
            let mut pending = (r - 2) as u32;
            let mut left = (r - 1) as u32;
            while l < stack.last().unwrap().0 {
                let (depth, from, mut children) = stack.pop().unwrap();
                children.push(pending);
                let id = (n + kid_lists.len()) as u32;
                for &ch in &children {
                    parent[ch as usize] = id;
                }
                parent.push(NONE);
                sd.push(depth);
                lb.push(from);
                rb.push((r - 1) as u32);
                kid_lists.push(children);
                pending = id;
                left = from;
            }
            let top = stack.last_mut().unwrap();
            if l > top.0 {
                stack.push((l, left, vec![pending]));
            } else {
                top.2.push(pending);
            }
        }
        let (_, _, children) = stack.pop().unwrap();
        let root = n + kid_lists.len();
        for &ch in &children {
            parent[ch as usize] = root as u32;
        }
        parent.push(NONE);
        sd.push(0);
        lb.push(1);
        rb.push(n as u32);
        kid_lists.push(children);

        let nodes = parent.len();
        let mut kid_start = vec![0u32; nodes + 1];
        let mut kids = Vec::with_capacity(nodes);
        for v in 0..nodes {
            if v >= n {
                kids.extend_from_slice(&kid_lists[v - n]);
            }
            kid_start[v + 1] = kids.len() as u32;
        }
        let rep: Vec<u32> = lb.iter().map(|&r| sav[r as usize]).collect();

        let isa = sa.isa().to_vec();
        let mut e = vec![0u32; n + 1];
        for j in 1..=n {
            let leaf = isa[j] as usize - 1;
            e[j] = (j + sd[parent[leaf] as usize] as usize - 1) as u32;
        }
        EnhancedSuffixTree {
            n,
            root,
            parent,
            sd,
            lb,
            rb,
            rep,
            kid_start,
            kids,
            e,
            isa,
            minmax: vec![UNSEEN; nodes],
            txtpos: vec![0; nodes],
            real: vec![false; nodes],
            bestd: vec![0; nodes],
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v < self.n
    }

    /// Parent node; `None` for the root.
    pub fn parent(&self, v: usize) -> Option<usize> {
        let p = self.parent[v];
        (p != NONE).then_some(p as usize)
    }

    pub fn string_depth(&self, v: usize) -> usize {
        self.sd[v] as usize
    }

    /// SA interval `(lb, rb)` of the suffixes below `v`, 1-based inclusive.
    pub fn interval(&self, v: usize) -> (usize, usize) {
        (self.lb[v] as usize, self.rb[v] as usize)
    }

    /// A text position where the label of `v` starts.
    pub fn occurrence(&self, v: usize) -> usize {
        self.rep[v] as usize
    }

    pub fn children(&self, v: usize) -> &[u32] {
        &self.kids[self.kid_start[v] as usize..self.kid_start[v + 1] as usize]
    }

    /// Leaf of suffix `j`.
    pub fn leaf(&self, j: usize) -> usize {
        self.isa[j] as usize - 1
    }

    /// `E[j] = j + sd(parent(leaf_j)) - 1`.
    pub fn e(&self, j: usize) -> usize {
        self.e[j] as usize
    }

    pub fn minmax(&self, v: usize) -> u32 {
        self.minmax[v]
    }

    /// Witness occurrence of `minmax(v)`, if any.
    pub fn txtpos(&self, v: usize) -> Option<usize> {
        (self.txtpos[v] != 0).then_some(self.txtpos[v] as usize)
    }

    pub fn real(&self, v: usize) -> bool {
        self.real[v]
    }

    /// Processed occurrence of the label of `v` with the largest `D`.
    pub fn bestd(&self, v: usize) -> Option<usize> {
        (self.bestd[v] != 0).then_some(self.bestd[v] as usize)
    }

    /// Child of `v` whose edge starts with `ch`.
    pub fn child(&self, t: &[u16], v: usize, ch: u16) -> Option<usize> {
        let depth = self.sd[v] as usize;
        let kids = self.children(v);
        let first = |k: u32| t[self.rep[k as usize] as usize + depth];
        let idx = kids.partition_point(|&k| first(k) < ch);
        kids.get(idx)
            .filter(|&&k| first(k) == ch)
            .map(|&k| k as usize)
    }

    /// Matches `T[i..]` from the root, entering a child only while its
    /// `minmax` is below `c`. Leaves are never entered.
    pub fn descend(&self, t: &[u16], i: usize, c: u32) -> Descent {
        let mut v = self.root;
        loop {
            let depth = self.sd[v] as usize;
            if i + depth >= self.n {
                return Descent { node: v, blocked: None };
            }
            let Some(u) = self.child(t, v, t[i + depth]) else {
                return Descent { node: v, blocked: None };
            };
            if self.is_leaf(u) || self.minmax[u] >= c {
                return Descent {
                    node: v,
                    blocked: Some(u),
                };
            }
            v = u;
        }
    }

    /// Node `y` on the path of `T[i..]` with `sd(parent(y)) < len <= sd(y)`,
    /// or the root for `len == 0`.
    pub fn locus(&self, t: &[u16], i: usize, len: usize) -> usize {
        let mut v = self.root;
        while (self.sd[v] as usize) < len {
            v = self
                .child(t, v, t[i + self.sd[v] as usize])
                .expect("prefix of T[i..] has a locus");
        }
        v
    }

    /// The next phrase at `i` as `(source, copy length)`; source 0 for a
    /// literal. Requires `T[1..i)` parsed and annotated.
    pub fn match_admissible(&self, text: &Text, ledger: &ChainLedger, i: usize, mode: Mode) -> (usize, usize) {
        let t = text.padded();
        let stop = self.descend(t, i, ledger.bound());
        let v = stop.node;
        let minmax = (self.txtpos[v] as usize, self.sd[v] as usize);
        if mode == Mode::Minmax {
            return minmax;
        }
        let Some(u) = stop.blocked.filter(|&u| !self.is_leaf(u)) else {
            return minmax;
        };
        let Some(k) = self.bestd(u) else {
            return minmax;
        };
        let d = ledger.dist(k) as usize;
        if d <= self.sd[v] as usize {
            return minmax;
        }
        let mut len = self.sd[u] as usize;
        while len < d && t[k + len] == t[i + len] {
            len += 1;
        }
        (k, len.min(d))
    }

    /// Updates the annotations after the phrase `T[i..=i+len]` has been
    /// assigned in `ledger`. With `track_d`, also maintains `bestd`.
    pub fn update_annotations(&mut self, ledger: &ChainLedger, i: usize, len: usize, track_d: bool) {
        let last = i + len;
        let mut m = 0;
        for j in (1..=last).rev() {
            if j < i && (self.e[j] as usize) < i {
                break;
            }
            m = m.max(ledger.chain(j));
            let leaf = self.leaf(j);
            if i <= j || self.minmax[leaf] == UNSEEN {
                self.minmax[leaf] = m;
            } else {
                self.minmax[leaf] = self.minmax[leaf].max(m);
            }
            let dj = ledger.dist(j);
            let mut v = self.parent[leaf] as usize;
            while v != self.root {
                let end = j + self.sd[v] as usize - 1;
                if end < i {
                    break;
                }
                if end <= last {
                    let mv = ledger.cmax(j, end);
                    if !self.real[v] || self.minmax[v] > mv {
                        self.minmax[v] = mv;
                        self.txtpos[v] = j as u32;
                        self.real[v] = true;
                    }
                } else if !self.real[v] {
                    self.minmax[v] = m;
                    self.txtpos[v] = j as u32;
                }
                if track_d {
                    let b = self.bestd[v] as usize;
                    if b == 0 || dj > ledger.dist(b) || (dj == ledger.dist(b) && j > b) {
                        self.bestd[v] = j as u32;
                    }
                }
                v = self.parent[v] as usize;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn tree(bytes: &[u8]) -> (Text, EnhancedSuffixTree) {
        let t = Text::ingest(bytes).unwrap();
        let sa = SuffixArrays::build(&t);
        let st = EnhancedSuffixTree::build(&t, &sa);
        (t, st)
    }

    fn label(t: &Text, st: &EnhancedSuffixTree, v: usize) -> Vec<u16> {
        let s = st.occurrence(v);
        t.padded()[s..s + st.string_depth(v)].to_vec()
    }

    /// Labels of internal nodes: substrings followed by two distinct symbols.
    fn naive_internal(t: &[u16]) -> BTreeSet<Vec<u16>> {
        let n = t.len();
        let mut out = BTreeSet::new();
        out.insert(Vec::new());
        for a in 0..n {
            for b in a + 1..n {
                let w = &t[a..b];
                let follow: BTreeSet<u16> = (0..n)
                    .filter(|&s| s + w.len() < n && &t[s..s + w.len()] == w)
                    .map(|s| t[s + w.len()])
                    .collect();
                if follow.len() >= 2 {
                    out.insert(w.to_vec());
                }
            }
        }
        out
    }

    fn internal_labels(t: &Text, st: &EnhancedSuffixTree) -> BTreeSet<Vec<u16>> {
        (t.len()..st.node_count()).map(|v| label(t, st, v)).collect()
    }

    #[test]
    fn sentinel_only() {
        let (_, st) = tree(b"");
        assert_eq!(st.node_count(), 2);
        assert_eq!(st.children(st.root()), &[0]);
        assert_eq!(st.parent(0), Some(st.root()));
    }

    #[test]
    fn unary() {
        let (t, st) = tree(b"aaa");
        let labels = internal_labels(&t, &st);
        assert_eq!(labels, BTreeSet::from([vec![], vec![1], vec![1, 1]]));
        assert_eq!(st.node_count(), 4 + 3);
    }

    #[test]
    fn running_example_nodes() {
        let (t, st) = tree(b"alabaralalabarda");
        let labels = internal_labels(&t, &st);
        for w in ["a", "ala", "abar", "alabar", "bar", "labar"] {
            let codes: Vec<u16> = w.bytes().map(|b| t.decode_map().iter().position(|&x| x == b).unwrap() as u16).collect();
            assert!(labels.contains(&codes), "missing {w}");
        }
        assert_eq!(labels, naive_internal(t.symbols()));
    }

    #[test]
    fn matches_naive_trie() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let len = rng.gen_range(0..40);
            let bytes: Vec<u8> = (0..len).map(|_| rng.gen_range(b'a'..b'd')).collect();
            let (t, st) = tree(&bytes);
            assert_eq!(internal_labels(&t, &st), naive_internal(t.symbols()));
            assert!(st.node_count() < 2 * t.len().max(1) + 1);
            for v in 0..st.node_count() {
                if let Some(p) = st.parent(v) {
                    assert!(st.string_depth(p) < st.string_depth(v));
                }
                if v >= t.len() && v != st.root() {
                    assert!(st.children(v).len() >= 2);
                }
            }
            for j in 1..=t.len() {
                let leaf = st.leaf(j);
                assert_eq!(st.occurrence(leaf), j);
                let p = st.parent(leaf).unwrap();
                assert_eq!(st.e(j) + 1, j + st.string_depth(p));
            }
        }
    }

    #[test]
    fn annotations_after_full_parse() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        for _ in 0..200 {
            let len = rng.gen_range(0..60);
            let bytes: Vec<u8> = (0..len).map(|_| rng.gen_range(b'a'..b'd')).collect();
            let c = rng.gen_range(1..4);
            let mode = if rng.gen_bool(0.5) { Mode::Minmax } else { Mode::Greedier };
            let (t, mut st) = tree(&bytes);
            let n = t.len();
            let mut ledger = ChainLedger::new(n, c);
            let mut i = 1;
            while i <= n {
                let (s, l) = st.match_admissible(&t, &ledger, i, mode);
                ledger.commit(s, i, l, |_, _| {});
                st.update_annotations(&ledger, i, l, true);
                i += l + 1;
            }
            let p = t.padded();
            let chains = ledger.chains();
            for v in n..st.node_count() {
                if v == st.root() {
                    continue;
                }
                let sd = st.string_depth(v);
                let label = &p[st.occurrence(v)..st.occurrence(v) + sd];
                let best = (1..=n + 1 - sd)
                    .filter(|&j| &p[j..j + sd] == label)
                    .map(|j| *chains[j..j + sd].iter().max().unwrap())
                    .min()
                    .unwrap();
                assert!(st.real(v), "node {v} never completed");
                assert_eq!(st.minmax(v), best, "node {v} of {bytes:?}");
                let w = st.txtpos(v).unwrap();
                assert_eq!(&p[w..w + sd], label);
                assert_eq!(*chains[w..w + sd].iter().max().unwrap(), best);
            }
        }
    }
}
