//! Permutations of `[n]`, the Chebyshev distance, and the head-extension map.
//!
//! Extending a permutation `p` of length `n` by a head `s in [0, n]` yields
//! `[s, phi_s(p_0), ..., phi_s(p_{n-1})]` with `phi_s(x) = x + [x >= s]`.
//! The length-zero permutation is the formal empty word, whose only
//! extension is `[0]`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A minimum distance that may be infinite (single-codeword codes,
/// singleton head sets). `Infinite` orders above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn is_at_least(self, d: usize) -> bool {
        self >= Distance::Finite(d)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(v) => Some(v),
            Distance::Infinite => None,
        }
    }

    /// `self + 1`, with infinity absorbing.
    pub fn succ(self) -> Distance {
        match self {
            Distance::Finite(v) => Distance::Finite(v + 1),
            Distance::Infinite => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(v) => write!(f, "{v}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// `phi_s(x) = x + [x >= s]`.
#[inline]
pub fn phi(x: usize, s: usize) -> usize {
    x + usize::from(x >= s)
}

/// Range-checked `phi` for a symbol of a length-`n` permutation.
pub fn phi_symbol(x: usize, s: usize, n: usize) -> Result<usize> {
    if x >= n {
        return Err(Error::SymbolOutOfRange { symbol: x, len: n });
    }
    if s > n {
        return Err(Error::HeadOutOfRange { head: s, bound: n });
    }
    Ok(phi(x, s))
}

/// A bijection on `[n]`, stored as its one-line form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    symbols: Vec<usize>,
}

impl Permutation {
    pub fn new(symbols: Vec<usize>) -> Result<Self> {
        let n = symbols.len();
        let mut seen = vec![false; n];
        for &x in &symbols {
            if x >= n {
                return Err(Error::NotAPermutation {
                    len: n,
                    reason: format!("symbol {x} out of range"),
                });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation {
                    len: n,
                    reason: format!("symbol {x} repeated"),
                });
            }
        }
        Ok(Permutation { symbols })
    }

    /// Callers guarantee the bijection invariant.
    pub(crate) fn from_vec_unchecked(symbols: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(symbols.clone()).is_ok());
        Permutation { symbols }
    }

    /// The length-zero permutation.
    pub fn empty() -> Self {
        Permutation {
            symbols: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            symbols: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.symbols
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.symbols
    }

    /// The extended permutation with head `s in [0, n]`.
    pub fn extend(&self, s: usize) -> Result<Permutation> {
        let n = self.len();
        if s > n {
            return Err(Error::HeadOutOfRange { head: s, bound: n });
        }
        let mut out = Vec::with_capacity(n + 1);
        out.push(s);
        out.extend(self.symbols.iter().map(|&x| phi(x, s)));
        Ok(Permutation { symbols: out })
    }

    /// Inverse of [`Permutation::extend`]: splits off the head and undoes
    /// the shift on the tail.
    pub fn contract(&self) -> Result<(Permutation, usize)> {
        let (&s, tail) = self.symbols.split_first().ok_or(Error::EmptyPermutation)?;
        let symbols = tail.iter().map(|&y| y - usize::from(y > s)).collect();
        Ok((Permutation { symbols }, s))
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((0..n).collect()),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.symbols)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::NotAPermutation {
                    len: 0,
                    reason: format!("bad symbol {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(symbols)
    }
}

pub(crate) fn write_symbols<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Lexicographic iterator over `S_n`.
#[derive(Debug, Clone)]
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { symbols: current })
    }
}

/// Advances `xs` to its lexicographic successor; returns false (leaving
/// `xs` sorted ascending) when `xs` was the last arrangement.
pub(crate) fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// `max_j |p_j - q_j|`.
pub fn chebyshev(p: &Permutation, q: &Permutation) -> Result<usize> {
    chebyshev_slices(p.as_slice(), q.as_slice())
}

/// `max_j |p_j - q_j|` over raw symbol sequences.
pub fn chebyshev_slices(p: &[usize], q: &[usize]) -> Result<usize> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(p.iter()
        .zip(q)
        .map(|(&a, &b)| a.abs_diff(b))
        .max()
        .unwrap_or(0))
}

/// Brute-force minimum pairwise distance over distinct codewords.
pub fn code_min_distance(code: &[Permutation]) -> Result<Distance> {
    let first = code.first().ok_or(Error::EmptyCode)?;
    if let Some(bad) = code.iter().find(|c| c.len() != first.len()) {
        return Err(Error::LengthMismatch {
            left: first.len(),
            right: bad.len(),
        });
    }
    let mut best = Distance::Infinite;
    for (i, a) in code.iter().enumerate() {
        for b in &code[i + 1..] {
            let d = chebyshev_slices(a.as_slice(), b.as_slice())?;
            if d > 0 && Distance::Finite(d) < best {
                best = Distance::Finite(d);
                if d == 1 {
                    return Ok(best);
                }
            }
        }
    }
    Ok(best)
}

/// A non-empty, strictly ascending set of heads inside `[0, context_len)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeadSet {
    heads: Vec<usize>,
    context_len: usize,
}

impl HeadSet {
    pub fn new(heads: Vec<usize>, context_len: usize) -> Result<Self> {
        if heads.is_empty() {
            return Err(Error::InvalidHeadSet("empty".into()));
        }
        if heads.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidHeadSet(format!(
                "{heads:?} not strictly ascending"
            )));
        }
        let max = *heads.last().unwrap();
        if max >= context_len {
            return Err(Error::InvalidHeadSet(format!(
                "head {max} outside [0, {context_len})"
            )));
        }
        Ok(HeadSet { heads, context_len })
    }

    /// `{0, d, 2d, ...}` inside `[0, context_len)`.
    pub fn spaced(d: usize, context_len: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams("spacing must be >= 1".into()));
        }
        HeadSet::new((0..context_len).step_by(d).collect(), context_len)
    }

    pub fn heads(&self) -> &[usize] {
        &self.heads
    }

    pub fn context_len(&self) -> usize {
        self.context_len
    }

    pub fn len(&self) -> usize {
        self.heads.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, head: usize) -> bool {
        self.heads.binary_search(&head).is_ok()
    }

    /// Position of `head` among the heads in ascending order.
    pub fn rank_of(&self, head: usize) -> Option<usize> {
        self.heads.binary_search(&head).ok()
    }

    /// The `rank`-th smallest head, 0-indexed.
    pub fn nth(&self, rank: usize) -> Option<usize> {
        self.heads.get(rank).copied()
    }

    /// Smallest gap between distinct heads.
    pub fn min_distance(&self) -> Distance {
        self.heads
            .windows(2)
            .map(|w| Distance::Finite(w[1] - w[0]))
            .min()
            .unwrap_or(Distance::Infinite)
    }

    /// Total shortfall of the consecutive gaps below `d`; zero for a
    /// singleton.
    pub fn c1(&self, d: usize) -> usize {
        self.heads
            .windows(2)
            .map(|w| w[1] - w[0])
            .filter(|&gap| gap < d)
            .map(|gap| d - gap)
            .sum()
    }
}

impl fmt::Display for HeadSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.heads)
    }
}

pub fn headset_min_distance(set: &HeadSet) -> Distance {
    set.min_distance()
}

/// `C^S`: every codeword extended by every head. The set's context length
/// must be one more than the codeword length.
pub fn extend_code(code: &[Permutation], set: &HeadSet) -> Result<BTreeSet<Permutation>> {
    let mut out = BTreeSet::new();
    for c in code {
        if set.context_len() != c.len() + 1 {
            return Err(Error::LengthMismatch {
                left: set.context_len(),
                right: c.len() + 1,
            });
        }
        for &s in set.heads() {
            out.insert(c.extend(s)?);
        }
    }
    Ok(out)
}

/// The integer set `(lo, hi]`, always with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    lo: usize,
    hi: usize,
}

impl Interval {
    /// The interval between two endpoints given in either order; `None`
    /// when they coincide.
    pub fn between(x: usize, y: usize) -> Option<Interval> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Some(Interval { lo: x, hi: y }),
            std::cmp::Ordering::Greater => Some(Interval { lo: y, hi: x }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_point(&self, a: usize) -> bool {
        self.lo < a && a <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn is_disjoint(&self, other: &Interval) -> bool {
        self.hi <= other.lo || other.hi <= self.lo
    }

    /// Image of the interval under `phi_s`.
    pub fn extended(&self, s: usize) -> Interval {
        Interval {
            lo: phi(self.lo, s),
            hi: phi(self.hi, s),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}]", self.lo, self.hi)
    }
}

pub fn interval_set(p: &Permutation, q: &Permutation) -> Result<BTreeSet<Interval>> {
    interval_set_slices(p.as_slice(), q.as_slice())
}

/// Interval set of two equal-length symbol sequences, which need not be
/// permutations.
pub fn interval_set_slices(p: &[usize], q: &[usize]) -> Result<BTreeSet<Interval>> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(p.iter()
        .zip(q)
        .filter_map(|(&a, &b)| Interval::between(a, b))
        .collect())
}

/// The interval of the pair that contains every other one, if any.
pub fn maximum_interval(p: &Permutation, q: &Permutation) -> Result<Option<Interval>> {
    Ok(maximum_of(&interval_set(p, q)?))
}

/// The member containing all others, if any.
pub fn maximum_of(set: &BTreeSet<Interval>) -> Option<Interval> {
    let widest = set.iter().max_by_key(|i| i.len()).copied();
    widest.filter(|w| set.iter().all(|i| i.is_subset_of(w)))
}
