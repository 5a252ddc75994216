//! Encoders and the sequential decoder for REP codes.
//!
//! Messages are per-step ranks `x_j < |S^(j)|`; the corresponding head
//! `s^(j)` is the `x_j`-th smallest element of `S^(j)`.
//!
//! The sequential encoder emits position `j` as the `s^(n-1-j)`-th smallest
//! symbol not yet emitted: the last extension step decides the first
//! symbol. The decoder walks the same order, choosing at each position the
//! head whose candidate symbol is nearest the received value.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{write_symbols, Permutation};
use crate::rank_set::RankSet;
use crate::rep::RepSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Message(pub Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeadSequence(pub Vec<usize>);

impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.0)
    }
}

impl fmt::Display for HeadSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub heads: HeadSequence,
    pub message: Message,
    /// Re-encoding of `heads`.
    pub codeword: Permutation,
}

fn check_len(spec: &RepSpec, len: usize) -> Result<()> {
    if len != spec.len() {
        return Err(Error::LengthMismatch {
            left: len,
            right: spec.len(),
        });
    }
    Ok(())
}

pub fn heads_from_message(spec: &RepSpec, message: &Message) -> Result<HeadSequence> {
    check_len(spec, message.0.len())?;
    message
        .0
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let set = spec.step(j);
            set.nth(x).ok_or(Error::RankOutOfRange {
                step: j,
                rank: x,
                size: set.len(),
            })
        })
        .collect::<Result<_>>()
        .map(HeadSequence)
}

pub fn message_from_heads(spec: &RepSpec, heads: &HeadSequence) -> Result<Message> {
    check_len(spec, heads.0.len())?;
    heads
        .0
        .iter()
        .enumerate()
        .map(|(j, &s)| {
            spec.step(j)
                .rank_of(s)
                .ok_or(Error::HeadNotInSet { step: j, head: s })
        })
        .collect::<Result<_>>()
        .map(Message)
}

fn check_heads(spec: &RepSpec, heads: &HeadSequence) -> Result<()> {
    check_len(spec, heads.0.len())?;
    for (j, &s) in heads.0.iter().enumerate() {
        if !spec.step(j).contains(s) {
            return Err(Error::HeadNotInSet { step: j, head: s });
        }
    }
    Ok(())
}

/// Extends the empty word by `s^(0)`, then `s^(1)`, and so on. `O(n^2)`.
pub fn encode_natural(spec: &RepSpec, heads: &HeadSequence) -> Result<Permutation> {
    check_heads(spec, heads)?;
    // Built back to front so each new head is a push.
    let mut rev: Vec<usize> = Vec::with_capacity(heads.0.len());
    for &s in &heads.0 {
        for x in rev.iter_mut() {
            *x += usize::from(*x >= s);
        }
        rev.push(s);
    }
    rev.reverse();
    Ok(Permutation::from_vec_unchecked(rev))
}

/// Order-statistic encoder, `O(n log n)`. Output equals [`encode_natural`].
pub fn encode_sequential(spec: &RepSpec, heads: &HeadSequence) -> Result<Permutation> {
    check_heads(spec, heads)?;
    let n = heads.0.len();
    let mut remaining = RankSet::full(n);
    let out = heads
        .0
        .iter()
        .rev()
        .map(|&s| remaining.take(s).expect("head below remaining count"))
        .collect();
    Ok(Permutation::from_vec_unchecked(out))
}

/// Nearest-candidate sequential decoder.
///
/// Position `i` considers every head `s` of `S^(n-1-i)`, whose candidate
/// symbol is the `s`-th smallest symbol not yet decoded, and keeps the one
/// closest to `received[i]` (ties to the smaller head). Any integers are
/// accepted as received values.
///
/// Candidates increase with `s`, so only the two heads bracketing the number
/// of remaining symbols below `received[i]` need comparing.
pub fn decode(spec: &RepSpec, received: &[i64]) -> Result<DecodeResult> {
    check_len(spec, received.len())?;
    let n = spec.len();
    let mut remaining = RankSet::full(n);
    let mut rev_heads = Vec::with_capacity(n);
    let mut codeword = Vec::with_capacity(n);
    for (i, &rho) in received.iter().enumerate() {
        let set = spec.step(n - 1 - i);
        let below_rho = if rho <= 0 {
            0
        } else {
            remaining.count_less(rho as usize)
        };
        let split = set.heads().partition_point(|&h| h < below_rho);
        let lower = split.checked_sub(1).map(|k| set.heads()[k]);
        let upper = set.heads().get(split).copied();
        let candidate = |s: usize| remaining.select(s).expect("head below remaining count");
        let head = match (lower, upper) {
            (Some(lo), Some(hi)) => {
                let gap_lo = rho - candidate(lo) as i64;
                let gap_hi = candidate(hi) as i64 - rho;
                if gap_hi < gap_lo {
                    hi
                } else {
                    lo
                }
            }
            (Some(lo), None) => lo,
            (None, Some(hi)) => hi,
            (None, None) => unreachable!("head sets are non-empty"),
        };
        codeword.push(remaining.take(head).expect("head below remaining count"));
        rev_heads.push(head);
    }
    rev_heads.reverse();
    let heads = HeadSequence(rev_heads);
    let message = message_from_heads(spec, &heads)?;
    Ok(DecodeResult {
        heads,
        message,
        codeword: Permutation::from_vec_unchecked(codeword),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::code_min_distance;
    use crate::rep::{kloeve_spec, optimal_spec, rep_enumerate, rep_size};
    use crate::rng::SplitMix64;
    use num_bigint::BigUint;
    use std::collections::BTreeSet;

    fn paper_example() -> RepSpec {
        RepSpec::new(vec![vec![0], vec![0, 1], vec![1]]).unwrap()
    }

    fn all_messages(spec: &RepSpec) -> Vec<Message> {
        let mut out = vec![vec![]];
        for s in spec.steps() {
            out = out
                .into_iter()
                .flat_map(|m: Vec<usize>| {
                    (0..s.len()).map(move |x| {
                        let mut v = m.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(Message).collect()
    }

    fn family() -> Vec<RepSpec> {
        let mut specs = Vec::new();
        let mut rng = SplitMix64::new(2024);
        for n in 1..=6 {
            for d in 1..=n {
                specs.push(optimal_spec(n, d).unwrap());
            }
            for q in 2..=4 {
                for d in 1..=n {
                    if let Ok(s) = kloeve_spec(n, d, q) {
                        specs.push(s);
                    }
                }
            }
            for _ in 0..25 {
                specs.push(RepSpec::random(n, &mut rng));
            }
        }
        specs
    }

    /// Argmin over every head against a plain sorted list.
    fn reference_decode(spec: &RepSpec, received: &[i64]) -> Vec<usize> {
        let n = spec.len();
        let mut remaining: Vec<usize> = (0..n).collect();
        let mut heads = vec![0; n];
        for (i, &rho) in received.iter().enumerate() {
            let set = spec.step(n - 1 - i);
            let best = set
                .heads()
                .iter()
                .copied()
                .min_by_key(|&s| ((rho - remaining[s] as i64).abs(), s))
                .unwrap();
            heads[n - 1 - i] = best;
            remaining.remove(best);
        }
        heads
    }

    #[test]
    fn message_mapping_examples() {
        let spec = optimal_spec(3, 2).unwrap();
        assert_eq!(
            heads_from_message(&spec, &Message(vec![0, 0, 1]))
                .unwrap()
                .0,
            [0, 0, 2]
        );
        assert_eq!(
            heads_from_message(&spec, &Message(vec![0, 0, 0]))
                .unwrap()
                .0,
            [0, 0, 0]
        );
        assert!(matches!(
            heads_from_message(&spec, &Message(vec![0, 0, 2])),
            Err(Error::RankOutOfRange { step: 2, .. })
        ));

        let ex = paper_example();
        assert_eq!(
            message_from_heads(&ex, &HeadSequence(vec![0, 1, 1]))
                .unwrap()
                .0,
            [0, 1, 0]
        );
        assert!(matches!(
            message_from_heads(&ex, &HeadSequence(vec![0, 1, 0])),
            Err(Error::HeadNotInSet { step: 2, head: 0 })
        ));
        let singletons = optimal_spec(4, 4).unwrap();
        assert_eq!(
            message_from_heads(&singletons, &HeadSequence(vec![0; 4]))
                .unwrap()
                .0,
            [0; 4]
        );
    }

    #[test]
    fn message_mapping_round_trips() {
        for spec in family() {
            for m in all_messages(&spec) {
                let h = heads_from_message(&spec, &m).unwrap();
                assert_eq!(message_from_heads(&spec, &h).unwrap(), m);
            }
        }
    }

    #[test]
    fn encoder_examples() {
        let ex = paper_example();
        let nat = |h: &[usize]| {
            encode_natural(&ex, &HeadSequence(h.to_vec()))
                .unwrap()
                .to_string()
        };
        let seq = |h: &[usize]| {
            encode_sequential(&ex, &HeadSequence(h.to_vec()))
                .unwrap()
                .to_string()
        };
        assert_eq!(nat(&[0, 0, 1]), "1 0 2");
        assert_eq!(nat(&[0, 1, 1]), "1 2 0");
        assert_eq!(seq(&[0, 0, 1]), "1 0 2");
        assert_eq!(seq(&[0, 1, 1]), "1 2 0");

        let zeros = optimal_spec(3, 3).unwrap();
        let h = HeadSequence(vec![0; 3]);
        assert_eq!(
            encode_natural(&zeros, &h).unwrap(),
            Permutation::identity(3)
        );
        assert_eq!(
            encode_sequential(&zeros, &h).unwrap(),
            Permutation::identity(3)
        );

        assert!(encode_sequential(&ex, &HeadSequence(vec![0, 2, 1])).is_err());
        assert!(encode_natural(&ex, &HeadSequence(vec![0, 0])).is_err());
    }

    #[test]
    fn encoders_agree_and_cover_the_code() {
        for spec in family() {
            let code: BTreeSet<_> = rep_enumerate(&spec, 1 << 20).unwrap().collect();
            let mut image = BTreeSet::new();
            for m in all_messages(&spec) {
                let h = heads_from_message(&spec, &m).unwrap();
                let a = encode_natural(&spec, &h).unwrap();
                let b = encode_sequential(&spec, &h).unwrap();
                assert_eq!(a, b, "spec {spec:?} heads {h:?}");
                assert!(code.contains(&a));
                image.insert(a);
            }
            assert_eq!(BigUint::from(image.len()), rep_size(&spec));
        }
    }

    #[test]
    fn decode_hand_trace() {
        let spec = optimal_spec(4, 3).unwrap();
        let out = decode(&spec, &[1, 0, 1, 2]).unwrap();
        assert_eq!(out.heads.0, [0, 0, 0, 0]);
        assert_eq!(out.codeword.to_string(), "0 1 2 3");
        assert_eq!(out.message.0, [0, 0, 0, 0]);
        assert!(decode(&spec, &[0, 1]).is_err());
    }

    #[test]
    fn decode_zero_noise_random_messages() {
        let mut rng = SplitMix64::new(5);
        for &(n, d) in &[(10, 3), (100, 7), (1000, 4), (10_000, 16)] {
            let spec = optimal_spec(n, d).unwrap();
            for _ in 0..3 {
                let m = Message(
                    spec.steps()
                        .iter()
                        .map(|s| rng.below(s.len() as u64) as usize)
                        .collect(),
                );
                let h = heads_from_message(&spec, &m).unwrap();
                let c = encode_sequential(&spec, &h).unwrap();
                let r: Vec<i64> = c.as_slice().iter().map(|&x| x as i64).collect();
                let out = decode(&spec, &r).unwrap();
                assert_eq!(out.heads, h);
                assert_eq!(out.message, m);
                assert_eq!(out.codeword, c);
            }
        }
    }

    #[test]
    fn decode_radius_optimal_5_3() {
        let spec = optimal_spec(5, 3).unwrap();
        let messages = all_messages(&spec);
        assert_eq!(messages.len(), 4); // 1*1*1*2*2
        for m in messages {
            let h = heads_from_message(&spec, &m).unwrap();
            let c = encode_sequential(&spec, &h).unwrap();
            for mut code in 0..243u32 {
                let r: Vec<i64> = c
                    .as_slice()
                    .iter()
                    .map(|&x| {
                        let e = (code % 3) as i64 - 1;
                        code /= 3;
                        x as i64 + e
                    })
                    .collect();
                assert_eq!(decode(&spec, &r).unwrap().message, m);
            }
        }
    }

    #[test]
    fn decode_matches_reference_argmin_on_arbitrary_words() {
        let mut rng = SplitMix64::new(99);
        for spec in family() {
            let n = spec.len() as u64;
            for _ in 0..20 {
                let r: Vec<i64> = (0..n).map(|_| rng.below(n + 6) as i64 - 3).collect();
                let out = decode(&spec, &r).unwrap();
                assert_eq!(
                    out.heads.0,
                    reference_decode(&spec, &r),
                    "spec {spec:?} r {r:?}"
                );
                assert_eq!(out.codeword, encode_sequential(&spec, &out.heads).unwrap());
            }
        }
    }

    #[test]
    fn decoded_word_is_in_code() {
        let spec = optimal_spec(6, 2).unwrap();
        let code: Vec<_> = rep_enumerate(&spec, 100).unwrap().collect();
        assert!(code_min_distance(&code).unwrap().is_at_least(2));
        let out = decode(&spec, &[9, -4, 3, 3, 3, 3]).unwrap();
        assert!(code.contains(&out.codeword));
    }
}
