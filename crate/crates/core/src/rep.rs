//! Recursively extended permutation (REP) codes.
//!
//! A REP code of length `n` is generated by head sets `S^(0), ..., S^(n-1)`
//! with `S^(j) ⊆ [j+1]`: starting from the empty word, step `j` extends every
//! codeword by every head in `S^(j)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::dpgp::floor_product;
use crate::error::{Error, Result};
use crate::perm::{Distance, HeadSet, Permutation};
use crate::rng::SplitMix64;

/// The head sets generating a REP code; step `j` lives in `[0, j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RepSpec {
    sets: Vec<HeadSet>,
}

impl RepSpec {
    /// Validates raw head lists, reporting every offending step at once.
    pub fn new(raw: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets = Vec::with_capacity(raw.len());
        let mut bad = Vec::new();
        let mut reasons = Vec::new();
        for (j, heads) in raw.into_iter().enumerate() {
            match HeadSet::new(heads, j + 1) {
                Ok(s) => sets.push(s),
                Err(e) => {
                    bad.push(j);
                    reasons.push(format!("step {j}: {e}"));
                }
            }
        }
        if !bad.is_empty() {
            return Err(Error::InvalidSpec {
                steps: bad,
                reason: reasons.join("; "),
            });
        }
        Ok(RepSpec { sets })
    }

    pub fn from_sets(sets: Vec<HeadSet>) -> Result<Self> {
        let bad: Vec<usize> = sets
            .iter()
            .enumerate()
            .filter(|(j, s)| s.context_len() != j + 1)
            .map(|(j, _)| j)
            .collect();
        if !bad.is_empty() {
            return Err(Error::InvalidSpec {
                steps: bad,
                reason: "step j must have context length j+1".into(),
            });
        }
        Ok(RepSpec { sets })
    }

    /// Code length.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn step(&self, j: usize) -> &HeadSet {
        &self.sets[j]
    }

    pub fn steps(&self) -> &[HeadSet] {
        &self.sets
    }

    /// Parses the line format: line `j` holds the ascending heads of
    /// `S^(j)`; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut sets = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let heads = trimmed
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::SpecParse {
                        line: line_no,
                        reason: format!("bad head {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let j = sets.len();
            let set = HeadSet::new(heads, j + 1).map_err(|e| Error::SpecParse {
                line: line_no,
                reason: format!("step {j}: {e}"),
            })?;
            sets.push(set);
        }
        Ok(RepSpec { sets })
    }

    /// A random spec: each step is a uniformly random non-empty subset.
    pub fn random(n: usize, rng: &mut SplitMix64) -> Self {
        let sets = (0..n)
            .map(|j| loop {
                let heads: Vec<usize> = (0..=j).filter(|_| rng.next_u64() & 1 == 1).collect();
                if !heads.is_empty() {
                    break HeadSet::new(heads, j + 1).unwrap();
                }
            })
            .collect();
        RepSpec { sets }
    }
}

impl fmt::Display for RepSpec {
    /// One line per step, the format [`RepSpec::parse`] reads.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sets {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for RepSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RepSpec::parse(s)
    }
}

fn check_nd(n: usize, d: usize) -> Result<()> {
    if d == 0 || d > n {
        return Err(Error::InvalidParams(format!(
            "need 1 <= d <= n, got n={n}, d={d}"
        )));
    }
    Ok(())
}

/// `S^(j) = {0, d, 2d, ..., floor(j/d) d}`: the largest head sets with
/// spacing `d`.
pub fn optimal_spec(n: usize, d: usize) -> Result<RepSpec> {
    check_nd(n, d)?;
    let sets = (0..n)
        .map(|j| HeadSet::spaced(d, j + 1))
        .collect::<Result<_>>()?;
    Ok(RepSpec { sets })
}

/// The q-ary family: singletons `{0}` for the first `(q-1)d` steps, then
/// `{floor(j/(q-1)) x : x < q-1} ∪ {j}`.
pub fn kloeve_spec(n: usize, d: usize, q: usize) -> Result<RepSpec> {
    if q < 2 || d == 0 || (q - 1) * d >= n {
        return Err(Error::InvalidParams(format!(
            "need q >= 2, d >= 1 and (q-1)d < n, got n={n}, d={d}, q={q}"
        )));
    }
    let warmup = (q - 1) * d;
    let sets = (0..n)
        .map(|j| {
            if j < warmup {
                return HeadSet::new(vec![0], j + 1);
            }
            let step = j / (q - 1);
            let mut heads: Vec<usize> = (0..q - 1).map(|x| step * x).collect();
            heads.push(j);
            HeadSet::new(heads, j + 1)
        })
        .collect::<Result<_>>()?;
    Ok(RepSpec { sets })
}

/// `prod_j |S^(j)|`.
pub fn rep_size(spec: &RepSpec) -> BigUint {
    spec.sets
        .iter()
        .fold(BigUint::one(), |acc, s| acc * s.len())
}

/// `prod_{j<n} (floor(j/d) + 1)`, the size of the largest REP code of
/// length `n` with head-set spacing `d`.
pub fn optimal_rep_size(n: usize, d: usize) -> Result<BigUint> {
    check_nd(n, d)?;
    Ok(floor_product(n, d))
}

pub fn c1_headset(set: &HeadSet, d: usize) -> usize {
    set.c1(d)
}

/// Summary of a spec against a target distance.
///
/// `certified` is a sufficient condition only: every step's head set is
/// spaced at least `d`, which forces the code's minimum distance to be at
/// least `d`. Codes can reach `d` without it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecReport {
    pub n: usize,
    pub code_size: BigUint,
    pub step_min_distance: Vec<Distance>,
    /// Lower bound on the code's minimum distance: the smallest head-set
    /// spacing over all steps.
    pub guaranteed_distance: Distance,
    pub target: usize,
    pub certified: bool,
}

pub fn validate_spec(spec: &RepSpec, d: usize) -> SpecReport {
    let step_min_distance: Vec<Distance> = spec.sets.iter().map(HeadSet::min_distance).collect();
    let guaranteed_distance = step_min_distance
        .iter()
        .copied()
        .min()
        .unwrap_or(Distance::Infinite);
    SpecReport {
        n: spec.len(),
        code_size: rep_size(spec),
        step_min_distance,
        guaranteed_distance,
        target: d,
        certified: guaranteed_distance.is_at_least(d),
    }
}

/// Every codeword, refusing when the code exceeds `cap`.
///
/// Order: earlier steps vary slowest, heads ascend within a step.
pub fn rep_enumerate(spec: &RepSpec, cap: u64) -> Result<RepIter<'_>> {
    let size = rep_size(spec);
    if size > BigUint::from(cap) {
        return Err(Error::CapExceeded { size, cap });
    }
    let n = spec.len();
    let mut prefixes = Vec::with_capacity(n + 1);
    prefixes.push(Permutation::empty());
    for j in 0..n {
        let next = prefixes[j].extend(spec.step(j).heads()[0])?;
        prefixes.push(next);
    }
    Ok(RepIter {
        spec,
        ranks: vec![0; n],
        prefixes,
        done: false,
    })
}

/// Odometer over messages; `prefixes[j]` is the codeword of the first `j`
/// steps, so advancing step `k` only rebuilds `prefixes[k+1..]`.
#[derive(Debug, Clone)]
pub struct RepIter<'a> {
    spec: &'a RepSpec,
    ranks: Vec<usize>,
    prefixes: Vec<Permutation>,
    done: bool,
}

impl Iterator for RepIter<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = self.prefixes.last().cloned();
        let n = self.ranks.len();
        let Some(k) = (0..n)
            .rev()
            .find(|&k| self.ranks[k] + 1 < self.spec.step(k).len())
        else {
            self.done = true;
            return out;
        };
        self.ranks[k] += 1;
        for r in &mut self.ranks[k + 1..] {
            *r = 0;
        }
        for j in k..n {
            let head = self.spec.step(j).heads()[self.ranks[j]];
            self.prefixes[j + 1] = self.prefixes[j].extend(head).expect("head within step");
        }
        out
    }
}
