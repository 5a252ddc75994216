//! Direct product group permutation (DPGP) codes: all permutations with
//! `p_i = i (mod d)`, i.e. the direct product of the symmetric groups on the
//! residue classes `A_i = {i, i + d, i + 2d, ...} ∩ [n]`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::perm::{next_permutation, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpgpParams {
    n: usize,
    d: usize,
}

impl DpgpParams {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if d == 0 || d > n {
            return Err(Error::InvalidParams(format!(
                "need 1 <= d <= n, got n={n}, d={d}"
            )));
        }
        Ok(DpgpParams { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Size of residue class `i`.
    pub fn class_len(&self, i: usize) -> usize {
        (self.n - i).div_ceil(self.d)
    }

    /// Members of residue class `i`, ascending. These are also the positions
    /// the class occupies.
    pub fn class(&self, i: usize) -> impl Iterator<Item = usize> {
        (i..self.n).step_by(self.d)
    }
}

/// One rank per residue class, each selecting a lexicographic arrangement
/// of that class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassRanks(pub Vec<BigUint>);

pub fn is_dpgp_member(p: &Permutation, d: usize) -> Result<bool> {
    DpgpParams::new(p.len(), d)?;
    Ok(p.as_slice()
        .iter()
        .enumerate()
        .all(|(i, &x)| x % d == i % d))
}

pub(crate) fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// `(ceil(n/d)!)^(n mod d) * (floor(n/d)!)^(d - n mod d)`, checked against
/// the product form `prod_j (floor(j/d) + 1)`.
pub fn dpgp_size(n: usize, d: usize) -> Result<BigUint> {
    let factorial_form = dpgp_size_factorial_form(n, d)?;
    let product_form = dpgp_size_product_form(n, d)?;
    assert_eq!(
        factorial_form, product_form,
        "DPGP size forms disagree at n={n}, d={d}"
    );
    Ok(factorial_form)
}

/// Product of the class factorials.
pub fn dpgp_size_factorial_form(n: usize, d: usize) -> Result<BigUint> {
    DpgpParams::new(n, d)?;
    let (q, r) = (n / d, n % d);
    Ok(factorial(n.div_ceil(d)).pow(r as u32) * factorial(q).pow((d - r) as u32))
}

/// `prod_{j<n} (floor(j/d) + 1)`.
pub fn dpgp_size_product_form(n: usize, d: usize) -> Result<BigUint> {
    DpgpParams::new(n, d)?;
    Ok(floor_product(n, d))
}

/// `prod_{j<n} (floor(j/d) + 1)`.
pub(crate) fn floor_product(n: usize, d: usize) -> BigUint {
    (0..n).fold(BigUint::one(), |acc, j| acc * (j / d + 1))
}

/// Every codeword of the DPGP code, refusing when the code exceeds `cap`.
pub fn dpgp_enumerate(n: usize, d: usize, cap: u64) -> Result<DpgpIter> {
    let params = DpgpParams::new(n, d)?;
    let size = dpgp_size(n, d)?;
    if size > BigUint::from(cap) {
        return Err(Error::CapExceeded { size, cap });
    }
    let classes = (0..d).map(|i| params.class(i).collect()).collect();
    Ok(DpgpIter {
        params,
        classes,
        done: false,
    })
}

/// Classes advance like an odometer, the last class fastest, each through
/// its arrangements in lexicographic order.
#[derive(Debug, Clone)]
pub struct DpgpIter {
    params: DpgpParams,
    classes: Vec<Vec<usize>>,
    done: bool,
}

impl Iterator for DpgpIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let word = place_classes(&self.params, &self.classes);
        self.done = !self.classes.iter_mut().rev().any(|c| next_permutation(c));
        Some(word)
    }
}

fn place_classes(params: &DpgpParams, classes: &[Vec<usize>]) -> Permutation {
    let mut out = vec![0; params.n];
    for (i, values) in classes.iter().enumerate() {
        for (pos, &v) in params.class(i).zip(values) {
            out[pos] = v;
        }
    }
    Permutation::from_vec_unchecked(out)
}

/// Lexicographic unranking of an arrangement of `0..k`.
fn unrank(k: usize, rank: &BigUint) -> Option<Vec<usize>> {
    if *rank >= factorial(k) {
        return None;
    }
    let mut pool: Vec<usize> = (0..k).collect();
    let mut rest = rank.clone();
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let f = factorial(k - 1 - i);
        let idx = (&rest / &f).to_usize().expect("index below k");
        rest %= &f;
        out.push(pool.remove(idx));
    }
    Some(out)
}

fn rank(arrangement: &[usize]) -> BigUint {
    let k = arrangement.len();
    let mut acc = BigUint::zero();
    for (i, &a) in arrangement.iter().enumerate() {
        let smaller_later = arrangement[i + 1..].iter().filter(|&&b| b < a).count();
        acc += factorial(k - 1 - i) * smaller_later;
    }
    acc
}

pub fn dpgp_encode(params: &DpgpParams, ranks: &ClassRanks) -> Result<Permutation> {
    if ranks.0.len() != params.d {
        return Err(Error::LengthMismatch {
            left: ranks.0.len(),
            right: params.d,
        });
    }
    let mut classes = Vec::with_capacity(params.d);
    for (i, r) in ranks.0.iter().enumerate() {
        let order =
            unrank(params.class_len(i), r).ok_or(Error::ClassRankOutOfRange { class: i })?;
        let members: Vec<usize> = params.class(i).collect();
        classes.push(order.into_iter().map(|k| members[k]).collect::<Vec<_>>());
    }
    Ok(place_classes(params, &classes))
}

/// Nearest value congruent to `i mod d` inside `[0, n)`; ties go to the
/// smaller candidate.
fn project_symbol(params: &DpgpParams, i: usize, received: i64) -> usize {
    let residue = (i % params.d) as i64;
    let d = params.d as i64;
    let last = params.class_len(i % params.d) as i64 - 1;
    let k = (received - residue).div_euclid(d).clamp(0, last);
    let below = residue + k * d;
    let best = if k < last && (residue + (k + 1) * d - received) < (received - below) {
        below + d
    } else {
        below
    };
    best as usize
}

/// Symbol-wise projection of a received word onto the class lattice.
pub fn dpgp_project(params: &DpgpParams, received: &[i64]) -> Result<Vec<usize>> {
    if received.len() != params.n {
        return Err(Error::LengthMismatch {
            left: received.len(),
            right: params.n,
        });
    }
    Ok(received
        .iter()
        .enumerate()
        .map(|(i, &r)| project_symbol(params, i, r))
        .collect())
}

/// Projects every symbol to its nearest class value, then ranks each class.
/// Fails with the projected estimate when the projection is not a
/// permutation. Correct whenever every symbol error is below `d/2`.
pub fn dpgp_decode(params: &DpgpParams, received: &[i64]) -> Result<ClassRanks> {
    let estimate = dpgp_project(params, received)?;
    if Permutation::new(estimate.clone()).is_err() {
        return Err(Error::DecodeFailure { estimate });
    }
    let ranks = (0..params.d)
        .map(|i| {
            let order: Vec<usize> = params
                .class(i)
                .map(|pos| estimate[pos] / params.d)
                .collect();
            rank(&order)
        })
        .collect();
    Ok(ClassRanks(ranks))
}
