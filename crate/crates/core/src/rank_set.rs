//! Order-statistic set over `[0, n)` backed by a Fenwick tree.
//!
//! `select`, `remove` and `count_less` are `O(log n)`; construction of the
//! full set is `O(n)`.

#[derive(Debug, Clone)]
pub struct RankSet {
    // 1-based Fenwick array of membership counts.
    tree: Vec<u32>,
    len: usize,
    top: usize,
}

impl RankSet {
    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        // Every slot starts at the size of the range it covers.
        let tree: Vec<u32> = (0..=n).map(|i| (i & i.wrapping_neg()) as u32).collect();
        let top = if n == 0 {
            0
        } else {
            1 << (usize::BITS - 1 - n.leading_zeros())
        };
        RankSet { tree, len: n, top }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn universe(&self) -> usize {
        self.tree.len() - 1
    }

    /// The `rank`-th smallest remaining element, 0-indexed.
    pub fn select(&self, rank: usize) -> Option<usize> {
        if rank >= self.len {
            return None;
        }
        let n = self.universe();
        let mut pos = 0;
        let mut rem = rank as u32;
        let mut step = self.top;
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= rem {
                pos = next;
                rem -= self.tree[next];
            }
            step >>= 1;
        }
        // pos is the 1-based index of the last slot before the target.
        Some(pos)
    }

    /// Number of remaining elements strictly below `x`.
    pub fn count_less(&self, x: usize) -> usize {
        let mut i = x.min(self.universe());
        let mut acc = 0u32;
        while i > 0 {
            acc += self.tree[i];
            i &= i - 1;
        }
        acc as usize
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.universe() && self.count_less(x + 1) != self.count_less(x)
    }

    /// Removes `x`; returns whether it was present.
    pub fn remove(&mut self, x: usize) -> bool {
        if !self.contains(x) {
            return false;
        }
        let n = self.universe();
        let mut i = x + 1;
        while i <= n {
            self.tree[i] -= 1;
            i += i & i.wrapping_neg();
        }
        self.len -= 1;
        true
    }

    /// Selects and removes the `rank`-th smallest element.
    pub fn take(&mut self, rank: usize) -> Option<usize> {
        let x = self.select(rank)?;
        let n = self.universe();
        let mut i = x + 1;
        while i <= n {
            self.tree[i] -= 1;
            i += i & i.wrapping_neg();
        }
        self.len -= 1;
        Some(x)
    }
}
