//! Dynamic range maximum over the points `(j, SA[j], D[SA[j]])`.
//!
//! Every order of the wavelet matrix (see [`Span`]) carries a heap-shaped
//! tree over its positions. A query decomposes the rectangle into per-order
//! spans, splits each span into maximal heap nodes and stops at the first
//! node whose maximum reaches the threshold.

use crate::succinct::{Span, WaveletMatrix};
use crate::{debug_asserts_enabled, Error, Result};

/// Space/time trade-off of the forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// One bit per heap node; node maxima are found by descending.
    Linear,
    /// A cached maximum per heap node.
    Fast,
}

#[derive(Clone, Debug)]
enum Store {
    Bits(Vec<Vec<u64>>),
    Max(Vec<Vec<u32>>),
}

/// The forest of heap trees, one per wavelet matrix order.
///
/// Values are stored as keys `D + 1` so that padding leaves can hold 0 and
/// never win a maximum. Ties go to the left child in both variants, which
/// makes the witnesses of the two variants coincide.
#[derive(Clone, Debug)]
pub struct RmqForest {
    wm: WaveletMatrix,
    space: Space,
    n: usize,
    pad: usize,
    /// Text position -> order-0 position (`ISA[k] - 1`), pad at index 0.
    top: Vec<u32>,
    /// Final-order position -> text position.
    perm: Vec<u32>,
    /// Final-order position -> key.
    vals: Vec<u32>,
    store: Store,
}

/// Maximal heap nodes covering leaves `[l, r)`, left to right.
fn cover(pad: usize, l: usize, r: usize, out: &mut Vec<usize>) {
    out.clear();
    let mut right = [0usize; 64];
    let mut nr = 0;
    let (mut l, mut r) = (l + pad, r + pad);
    while l < r {
        if l & 1 == 1 {
            out.push(l);
            l += 1;
        }
        if r & 1 == 1 {
            r -= 1;
            right[nr] = r;
            nr += 1;
        }
        l >>= 1;
        r >>= 1;
    }
    out.extend(right[..nr].iter().rev());
}

impl RmqForest {
    /// Builds the forest over `wm` (the wavelet matrix of `SA`), with `isa`
    /// and `d` 1-based with a pad at index 0. `D` values may range over
    /// `0..=n+1`, `n + 1` standing for infinity.
    pub fn build(wm: WaveletMatrix, isa: &[u32], d: &[u32], space: Space) -> RmqForest {
        let n = wm.len();
        assert_eq!(isa.len(), n + 1, "isa length");
        assert_eq!(d.len(), n + 1, "d length");
        let pad = n.next_power_of_two().max(1);
        let top = isa.iter().map(|&r| r.saturating_sub(1)).collect::<Vec<_>>();

        let mut cur = vec![0u32; n];
        for k in 1..=n {
            cur[isa[k] as usize - 1] = k as u32;
        }
        let mut next = Vec::with_capacity(n);
        let mut heap = vec![0u32; 2 * pad];
        let mut bits = Vec::new();
        let mut maxes = Vec::new();
        for order in 0..=wm.depth() {
            heap[pad..].iter_mut().for_each(|v| *v = 0);
            for (p, &t) in cur.iter().enumerate() {
                heap[pad + p] = d[t as usize] + 1;
            }
            for u in (1..pad).rev() {
                heap[u] = heap[2 * u].max(heap[2 * u + 1]);
            }
            match space {
                Space::Linear => {
                    let mut b = vec![0u64; pad.div_ceil(64)];
                    for u in 1..pad {
                        if heap[2 * u + 1] > heap[2 * u] {
                            b[u / 64] |= 1 << (u % 64);
                        }
                    }
                    bits.push(b);
                }
                Space::Fast => maxes.push(heap.clone()),
            }
            if order < wm.depth() {
                wm.permute_down(order, &cur, &mut next);
                std::mem::swap(&mut cur, &mut next);
            }
        }
        let vals = cur.iter().map(|&t| d[t as usize] + 1).collect();
        let store = match space {
            Space::Linear => Store::Bits(bits),
            Space::Fast => Store::Max(maxes),
        };
        RmqForest {
            wm,
            space,
            n,
            pad,
            top,
            perm: cur,
            vals,
            store,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// The wavelet matrix the forest was built over.
    pub fn wm(&self) -> &WaveletMatrix {
        &self.wm
    }

    /// The value standing for infinity.
    pub fn inf(&self) -> u32 {
        self.n as u32 + 1
    }

    /// Current `D[k]`.
    pub fn d(&self, k: usize) -> u32 {
        self.vals[self.final_pos(k)] - 1
    }

    fn final_pos(&self, k: usize) -> usize {
        self.wm.track(0, self.top[k] as usize)
    }

    #[inline]
    fn bit(bits: &[u64], u: usize) -> bool {
        (bits[u / 64] >> (u % 64)) & 1 == 1
    }

    #[inline]
    fn set_bit(bits: &mut [u64], u: usize, v: bool) {
        if v {
            bits[u / 64] |= 1 << (u % 64);
        } else {
            bits[u / 64] &= !(1 << (u % 64));
        }
    }

    /// Leaf (as an order position) holding the maximum below `node`, leftmost on ties.
    #[inline]
    fn descend(&self, order: usize, mut node: usize) -> usize {
        match &self.store {
            Store::Bits(bits) => {
                let b = &bits[order];
                while node < self.pad {
                    node = 2 * node + Self::bit(b, node) as usize;
                }
            }
            Store::Max(maxes) => {
                let m = &maxes[order];
                while node < self.pad {
                    node = 2 * node + (m[2 * node + 1] > m[2 * node]) as usize;
                }
            }
        }
        node - self.pad
    }

    /// `(final position, key)` of the maximum below `node`; the position is
    /// `usize::MAX` when the maximum is padding.
    #[inline]
    fn argmax(&self, order: usize, node: usize) -> (usize, u32) {
        let leaf = self.descend(order, node);
        if leaf >= self.n {
            return (usize::MAX, 0);
        }
        let q = self.wm.track(order, leaf);
        (q, self.vals[q])
    }

    #[inline]
    fn node_max(&self, order: usize, node: usize) -> u32 {
        match &self.store {
            Store::Max(maxes) => maxes[order][node],
            Store::Bits(_) => self.argmax(order, node).1,
        }
    }

    /// Sets `D[k] = d` (any value in `0..=n+1`).
    pub fn update(&mut self, k: usize, d: u32) -> Result<()> {
        if k == 0 || k > self.n {
            return Err(Error::PositionOutOfRange { pos: k, max: self.n });
        }
        let key = d.min(self.inf()) + 1;
        let depth = self.wm.depth();
        let mut ps = [0usize; 64];
        ps[0] = self.top[k] as usize;
        for o in 0..depth {
            ps[o + 1] = self.wm.step(o, ps[o]);
        }
        let q = ps[depth];
        let old = self.vals[q];
        if old == key {
            return Ok(());
        }
        self.vals[q] = key;
        for (o, &p) in ps[..=depth].iter().enumerate() {
            match self.store {
                Store::Bits(_) => self.ascend_bits(o, p, old, key),
                Store::Max(ref mut maxes) => {
                    let m = &mut maxes[o];
                    let mut x = self.pad + p;
                    m[x] = key;
                    while x > 1 {
                        x /= 2;
                        let v = m[2 * x].max(m[2 * x + 1]);
                        if m[x] == v {
                            break;
                        }
                        m[x] = v;
                    }
                }
            }
        }
        Ok(())
    }

    fn ascend_bits(&mut self, order: usize, p: usize, old: u32, key: u32) {
        let (mut m_old, mut m_new) = (old, key);
        let mut x = self.pad + p;
        while x > 1 {
            let u = x / 2;
            let x_right = x & 1 == 1;
            let points_x = match &self.store {
                Store::Bits(bits) => Self::bit(&bits[order], u) == x_right,
                Store::Max(_) => unreachable!(),
            };
            if !points_x && m_new < m_old {
                break;
            }
            if points_x && m_new > m_old {
                x = u;
                continue;
            }
            let m_y = self.node_max(order, x ^ 1);
            let right_wins = if x_right { m_new > m_y } else { m_y > m_new };
            let old_mu = if points_x { m_old } else { m_y };
            let new_mu = m_new.max(m_y);
            if let Store::Bits(bits) = &mut self.store {
                Self::set_bit(&mut bits[order], u, right_wins);
            }
            if new_mu == old_mu {
                break;
            }
            m_old = old_mu;
            m_new = new_mu;
            x = u;
        }
    }

    /// Some text position `s` with `ISA[s]` in `sp..=ep`, `i_min <= s < i_max`
    /// and `D[s] >= ell`, or `None` if there is none. The witness is the
    /// first one met scanning spans order by order and left to right.
    pub fn query(&self, sp: usize, ep: usize, i_min: usize, i_max: usize, ell: usize) -> Option<usize> {
        let i_min = i_min.max(1);
        if sp == 0 || sp > ep || ep > self.n || i_max <= i_min {
            return None;
        }
        let threshold = (ell as u64 + 1).min(u32::MAX as u64) as u32;
        let spans = self
            .wm
            .decompose(sp, ep, i_min as u32, (i_max - 1).min(self.n) as u32);
        let mut nodes = Vec::with_capacity(64);
        for Span { order, start, end, .. } in spans {
            cover(self.pad, start, end, &mut nodes);
            for &node in &nodes {
                let q = match &self.store {
                    Store::Max(maxes) => {
                        if maxes[order][node] < threshold {
                            continue;
                        }
                        self.wm.track(order, self.descend(order, node))
                    }
                    Store::Bits(_) => {
                        let (q, key) = self.argmax(order, node);
                        if key < threshold {
                            continue;
                        }
                        q
                    }
                };
                let s = self.perm[q] as usize;
                if debug_asserts_enabled() {
                    let rank = self.top[s] as usize + 1;
                    assert!((sp..=ep).contains(&rank), "witness {s} outside SA range");
                    assert!((i_min..i_max).contains(&s), "witness {s} outside text range");
                    assert!(self.d(s) as usize >= ell, "witness {s} below threshold");
                }
                return Some(s);
            }
        }
        None
    }

    /// Checks every heap node against the brute-force maximum of its leaves.
    #[doc(hidden)]
    pub fn check_consistency(&self) -> bool {
        let mut cur: Vec<usize> = (0..self.n).map(|p| self.wm.track(0, p)).collect();
        let mut next = Vec::new();
        for order in 0..=self.wm.depth() {
            let mut heap = vec![0u32; 2 * self.pad];
            for (p, &q) in cur.iter().enumerate() {
                heap[self.pad + p] = self.vals[q];
            }
            for u in (1..self.pad).rev() {
                heap[u] = heap[2 * u].max(heap[2 * u + 1]);
            }
            for u in 1..2 * self.pad {
                if self.node_max(order, u) != heap[u] {
                    return false;
                }
                let leaf = self.descend(order, u);
                if heap[self.pad + leaf] != heap[u] {
                    return false;
                }
            }
            if order < self.wm.depth() {
                self.wm.permute_down(order, &cur, &mut next);
                std::mem::swap(&mut cur, &mut next);
            }
        }
        true
    }
}
