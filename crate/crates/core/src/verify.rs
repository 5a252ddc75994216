//! Exhaustive and seeded checks of the extension calculus, the size
//! formulas, encoder equivalence and the decoding radius.
//!
//! Each check returns a [`CheckReport`]; counterexamples are recorded as
//! replayable input descriptions. Two mutations ([`ExtensionRule::Strict`],
//! [`HeadOrder::Forward`]) exist so the checks can be seen to fail.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;

use crate::codec::{
    decode, encode_natural, encode_sequential, heads_from_message, HeadSequence, Message,
};
use crate::dpgp::{
    dpgp_enumerate, dpgp_size_factorial_form, dpgp_size_product_form, is_dpgp_member,
};
use crate::error::{Error, Result};
use crate::perm::{
    chebyshev_slices, interval_set_slices, maximum_of, phi, Distance, HeadSet, Interval,
    Permutation,
};
use crate::rank_set::RankSet;
use crate::rep::{kloeve_spec, optimal_rep_size, optimal_spec, rep_enumerate, rep_size, RepSpec};
use crate::rng::SplitMix64;

const MAX_RECORDED: usize = 20;

/// Default ceiling on codeword x noise-pattern pairs for the radius check.
pub const RADIUS_CASE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    #[serde(skip)]
    pub range: String,
    pub cases: u64,
    /// First few counterexamples.
    pub failures: Vec<String>,
    #[serde(skip)]
    pub failure_count: u64,
    pub elapsed_ms: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// `key=value` lines. Timing is left out so the text is identical
    /// across runs.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "name={}\nrange={}\ncases={}\nfailures={}\nstatus={}\n",
            self.name,
            self.range,
            self.cases,
            self.failure_count,
            if self.passed() { "pass" } else { "fail" }
        );
        for f in &self.failures {
            out.push_str(&format!("counterexample={f}\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

struct Tally {
    name: &'static str,
    range: String,
    cases: u64,
    failures: Vec<String>,
    failure_count: u64,
    started: Instant,
}

impl Tally {
    fn new(name: &'static str, range: String) -> Self {
        Tally {
            name,
            range,
            cases: 0,
            failures: Vec::new(),
            failure_count: 0,
            started: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_RECORDED {
                self.failures.push(describe());
            }
        }
    }

    fn finish(self) -> CheckReport {
        CheckReport {
            name: self.name.to_string(),
            range: self.range,
            cases: self.cases,
            failures: self.failures,
            failure_count: self.failure_count,
            elapsed_ms: self.started.elapsed().as_millis(),
        }
    }
}

/// Which shift map the extension checks exercise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionRule {
    /// `x + [x >= s]`, the library's map.
    Corrected,
    /// `x + [x > s]`, which collides with the head.
    Strict,
}

impl ExtensionRule {
    fn phi(self, x: usize, s: usize) -> usize {
        match self {
            ExtensionRule::Corrected => phi(x, s),
            ExtensionRule::Strict => x + usize::from(x > s),
        }
    }

    fn extend(self, p: &[usize], s: usize) -> Vec<usize> {
        match self {
            ExtensionRule::Corrected => Permutation::new(p.to_vec())
                .and_then(|p| p.extend(s))
                .expect("valid permutation and head")
                .into_vec(),
            ExtensionRule::Strict => std::iter::once(s)
                .chain(p.iter().map(|&x| self.phi(x, s)))
                .collect(),
        }
    }

    fn interval(self, i: Interval, s: usize) -> Option<Interval> {
        Interval::between(self.phi(i.lo(), s), self.phi(i.hi(), s))
    }
}

fn subsets(universe: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << universe).map(move |mask| (0..universe).filter(|&b| mask >> b & 1 == 1).collect())
}

fn min_distance_raw(words: &[Vec<usize>]) -> Distance {
    let mut best = Distance::Infinite;
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            let d = chebyshev_slices(a, b).expect("equal lengths");
            if d > 0 {
                best = best.min(Distance::Finite(d));
            }
        }
    }
    best
}

fn set_distance(heads: &[usize]) -> Distance {
    heads
        .windows(2)
        .map(|w| Distance::Finite(w[1] - w[0]))
        .min()
        .unwrap_or(Distance::Infinite)
}

/// Every extension law over all permutations of length `1..=n_max`, with
/// the library's shift map.
pub fn check_extension_laws(n_max: usize) -> CheckReport {
    check_extension_laws_with(n_max, ExtensionRule::Corrected)
}

pub fn check_extension_laws_with(n_max: usize, rule: ExtensionRule) -> CheckReport {
    let mut t = Tally::new("extension_laws", format!("n<={n_max} rule={rule:?}"));
    for n in 1..=n_max {
        symbol_laws(&mut t, rule, n);
        let perms: Vec<Vec<usize>> = Permutation::all(n).map(Permutation::into_vec).collect();
        pair_laws(&mut t, rule, n, &perms);
        injectivity_law(&mut t, rule, n, &perms);
        interval_pair_laws(&mut t, rule, n, &perms);
        code_extension_laws(&mut t, rule, n, &perms);
    }
    interval_laws(&mut t, rule, n_max + 1);
    rank_laws(&mut t, rule, n_max + 3);
    t.finish()
}

// order preservation and distance growth of the shift map
fn symbol_laws(t: &mut Tally, rule: ExtensionRule, n: usize) {
    for s in 0..=n {
        for x in 0..n {
            for y in x + 1..n {
                let (px, py) = (rule.phi(x, s), rule.phi(y, s));
                t.check(px < py, || format!("order x={x} y={y} s={s}"));
                let straddle = usize::from(x < s && s <= y);
                t.check(py.abs_diff(px) == y - x + straddle, || {
                    format!("growth x={x} y={y} s={s}")
                });
            }
        }
    }
}

fn pair_laws(t: &mut Tally, rule: ExtensionRule, n: usize, perms: &[Vec<usize>]) {
    let ext: Vec<Vec<Vec<usize>>> = perms
        .iter()
        .map(|p| (0..=n).map(|s| rule.extend(p, s)).collect())
        .collect();
    for (pi, p) in perms.iter().enumerate() {
        for s in 0..=n {
            for u in 0..=n {
                let d = chebyshev_slices(&ext[pi][s], &ext[pi][u]).unwrap();
                t.check(d == s.abs_diff(u), || format!("twin p={p:?} s={s} t={u}"));
            }
        }
        for (qi, q) in perms.iter().enumerate() {
            if pi == qi {
                continue;
            }
            let base = chebyshev_slices(p, q).unwrap();
            for s in 0..=n {
                let d = chebyshev_slices(&ext[pi][s], &ext[qi][s]).unwrap();
                t.check(base <= d && d <= base + 1, || {
                    format!("sandwich p={p:?} q={q:?} s={s}")
                });
                for u in 0..=n {
                    let d = chebyshev_slices(&ext[pi][s], &ext[qi][u]).unwrap();
                    t.check(d >= s.abs_diff(u), || {
                        format!("expansive p={p:?} q={q:?} s={s} t={u}")
                    });
                }
            }
        }
    }
}

// (p, s) -> p^s is a bijection from S_n x [n+1] onto S_{n+1}
fn injectivity_law(t: &mut Tally, rule: ExtensionRule, n: usize, perms: &[Vec<usize>]) {
    let mut image = BTreeSet::new();
    for p in perms {
        for s in 0..=n {
            let e = rule.extend(p, s);
            t.check(Permutation::new(e.clone()).is_ok(), || {
                format!("injective p={p:?} s={s} image={e:?} not a permutation")
            });
            t.check(image.insert(e.clone()), || {
                format!("injective p={p:?} s={s} collides")
            });
        }
    }
}

fn interval_pair_laws(t: &mut Tally, rule: ExtensionRule, n: usize, perms: &[Vec<usize>]) {
    for p in perms {
        for q in perms {
            let set = interval_set_slices(p, q).unwrap();
            let widest = set.iter().map(Interval::len).max().unwrap_or(0);
            let d = chebyshev_slices(p, q).unwrap();
            t.check(widest == d, || format!("widest p={p:?} q={q:?}"));
            let Some(max) = maximum_of(&set) else {
                continue;
            };
            for s in 0..=n {
                let (ps, qs) = (rule.extend(p, s), rule.extend(q, s));
                let ext_max = maximum_of(&interval_set_slices(&ps, &qs).unwrap());
                let grown = max.len() + usize::from(max.contains_point(s));
                t.check(ext_max == rule.interval(max, s), || {
                    format!("max-interval-image p={p:?} q={q:?} s={s}")
                });
                t.check(chebyshev_slices(&ps, &qs).unwrap() == grown, || {
                    format!("max-interval-growth p={p:?} q={q:?} s={s}")
                });
            }
        }
        for s in 0..=n {
            for u in s + 1..=n {
                let (ps, pu) = (rule.extend(p, s), rule.extend(p, u));
                let set = interval_set_slices(&ps, &pu).unwrap();
                let mut want: BTreeSet<Interval> =
                    (s..u).filter_map(|k| Interval::between(k, k + 1)).collect();
                want.extend(Interval::between(s, u));
                t.check(set == want, || {
                    format!("twin-intervals p={p:?} s={s} t={u}")
                });
                // (s, s+1] is listed twice when t = s + 1
                let count = if u - s >= 2 { u - s + 1 } else { 1 };
                t.check(set.len() == count, || {
                    format!("twin-count p={p:?} s={s} t={u}")
                });
                t.check(maximum_of(&set) == Interval::between(s, u), || {
                    format!("twin-max p={p:?} s={s} t={u}")
                });
            }
        }
    }
}

fn interval_laws(t: &mut Tally, rule: ExtensionRule, m: usize) {
    let intervals: Vec<Interval> = (0..m)
        .flat_map(|a| (a + 1..m).filter_map(move |b| Interval::between(a, b)))
        .collect();
    for s in 0..=m {
        for &i in &intervals {
            let image = rule.interval(i, s);
            let want = i.len() + usize::from(i.contains_point(s));
            t.check(image.map_or(0, |x| x.len()) == want, || {
                format!("interval-len I={i} s={s}")
            });
            for &j in &intervals {
                let (ii, jj) = (image, rule.interval(j, s));
                if i.is_disjoint(&j) {
                    let ok = matches!((ii, jj), (Some(a), Some(b)) if a.is_disjoint(&b));
                    t.check(ok, || format!("disjoint I={i} J={j} s={s}"));
                }
                if i.is_subset_of(&j) {
                    let ok = matches!((ii, jj), (Some(a), Some(b)) if a.is_subset_of(&b));
                    t.check(ok, || format!("subset I={i} J={j} s={s}"));
                }
            }
        }
    }
}

// rank commutation and the complement identity on subsets of [m]
fn rank_laws(t: &mut Tally, rule: ExtensionRule, m: usize) {
    for a in subsets(m) {
        for s in 0..=m {
            let mut image: Vec<usize> = a.iter().map(|&x| rule.phi(x, s)).collect();
            image.sort_unstable();
            for (r, &x) in a.iter().enumerate() {
                t.check(rule.phi(x, s) == image[r], || {
                    format!("rank A={a:?} s={s} r={r}")
                });
            }
        }
    }
    let n = m;
    for a in subsets(n - 1) {
        for s in 0..n {
            let mut covered: BTreeSet<usize> = a.iter().map(|&x| rule.phi(x, s)).collect();
            covered.insert(s);
            let complement: BTreeSet<usize> = (0..n).filter(|x| !covered.contains(x)).collect();
            let rest: BTreeSet<usize> = (0..n - 1)
                .filter(|b| !a.contains(b))
                .map(|b| rule.phi(b, s))
                .collect();
            t.check(complement == rest, || {
                format!("complement A={a:?} s={s} n={n}")
            });
        }
    }
}

// seeded codes C ⊆ S_n and head sets S ⊆ [n+1]: size product and the
// distance bounds of the extended code
fn code_extension_laws(t: &mut Tally, rule: ExtensionRule, n: usize, perms: &[Vec<usize>]) {
    let mut rng = SplitMix64::for_stream(0x5eed, n as u64);
    for _ in 0..200 {
        let k = 1 + rng.below(perms.len().min(8) as u64) as usize;
        let mut code: Vec<Vec<usize>> = Vec::new();
        while code.len() < k {
            let p = &perms[rng.below(perms.len() as u64) as usize];
            if !code.contains(p) {
                code.push(p.clone());
            }
        }
        let heads: Vec<usize> = loop {
            let h: Vec<usize> = (0..=n).filter(|_| rng.next_u64() & 1 == 1).collect();
            if !h.is_empty() {
                break h;
            }
        };
        let extended: BTreeSet<Vec<usize>> = code
            .iter()
            .flat_map(|p| heads.iter().map(|&s| rule.extend(p, s)))
            .collect();
        let extended: Vec<Vec<usize>> = extended.into_iter().collect();
        let (dc, ds, de) = (
            min_distance_raw(&code),
            set_distance(&heads),
            min_distance_raw(&extended),
        );
        let describe = |law: &str| format!("{law} C={code:?} S={heads:?}");
        t.check(extended.len() == code.len() * heads.len(), || {
            describe("size-product")
        });
        t.check(de >= dc.min(ds), || describe("distance-lower"));
        t.check(de <= ds, || describe("distance-upper-heads"));
        t.check(de <= dc.succ(), || describe("distance-upper-code"));
    }
}

/// Head-set packing over every `S ⊆ [n+1]`, `n < universe`, and the
/// shortfall-relaxed bound `d(|S| - 1) <= universe - 1 + c1(S; d)` over every
/// `S ⊆ [universe]`, `d <= d_max`.
pub fn check_headset_laws(universe: usize, d_max: usize) -> CheckReport {
    let mut t = Tally::new("headset_laws", format!("S<=[{universe}] d<={d_max}"));
    for n in 0..universe {
        for heads in subsets(n + 1).filter(|h| !h.is_empty()) {
            let set = HeadSet::new(heads.clone(), n + 1).unwrap();
            for d in 1..=n + 1 {
                if set.min_distance().is_at_least(d) {
                    t.check(d * (set.len() - 1) <= n, || {
                        format!("packing S={heads:?} n={n} d={d}")
                    });
                    t.check(set.len() <= n / d + 1, || {
                        format!("packing S={heads:?} n={n} d={d}")
                    });
                }
            }
        }
        for d in 1..=n + 1 {
            let spaced = HeadSet::spaced(d, n + 1).unwrap();
            let want = if n >= d {
                Distance::Finite(d)
            } else {
                Distance::Infinite
            };
            t.check(
                spaced.len() == n / d + 1 && spaced.min_distance() == want,
                || format!("packing-attained n={n} d={d}"),
            );
        }
    }
    for heads in subsets(universe).filter(|h| !h.is_empty()) {
        let set = HeadSet::new(heads.clone(), universe).unwrap();
        for d in 1..=d_max {
            let c = set.c1(d);
            t.check(d * (set.len() - 1) <= universe - 1 + c, || {
                format!("shortfall S={heads:?} d={d} c={c}")
            });
        }
    }
    t.finish()
}

/// For `1 <= d <= n <= n_max`: DPGP enumeration count, brute-force count,
/// both closed forms, the optimal REP size and the optimal REP enumeration
/// count all agree.
pub fn check_sizes(n_max: usize) -> CheckReport {
    let mut t = Tally::new("sizes", format!("1<=d<=n<={n_max}"));
    for n in 1..=n_max {
        let all: Vec<Permutation> = Permutation::all(n).collect();
        for d in 1..=n {
            let brute = all.iter().filter(|p| is_dpgp_member(p, d).unwrap()).count();
            let enumerated = dpgp_enumerate(n, d, u64::MAX).unwrap().count();
            let factorial = dpgp_size_factorial_form(n, d).unwrap();
            let product = dpgp_size_product_form(n, d).unwrap();
            let rep = optimal_rep_size(n, d).unwrap();
            let spec = optimal_spec(n, d).unwrap();
            let rep_count = rep_enumerate(&spec, u64::MAX).unwrap().count();
            let values = [
                BigUint::from(brute),
                BigUint::from(enumerated),
                factorial,
                product,
                rep,
                BigUint::from(rep_count),
            ];
            t.check(values.iter().all(|v| *v == values[0]), || {
                format!("sizes n={n} d={d} values={values:?}")
            });
        }
    }
    t.finish()
}

/// Closed-form agreement alone, for ranges too large to enumerate.
pub fn check_size_formulas(n_max: usize) -> CheckReport {
    let mut t = Tally::new("size_formulas", format!("1<=d<=n<={n_max}"));
    for n in 1..=n_max {
        for d in 1..=n {
            let a = dpgp_size_factorial_form(n, d).unwrap();
            let b = dpgp_size_product_form(n, d).unwrap();
            let c = optimal_rep_size(n, d).unwrap();
            t.check(a == b && b == c, || format!("formulas n={n} d={d}"));
        }
    }
    t.finish()
}

/// Which head the sequential encoder consumes at output position `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeadOrder {
    /// `s^(n-1-j)`, the library's encoder.
    Reversed,
    /// `s^(j)`.
    Forward,
}

fn encode_with_order(spec: &RepSpec, heads: &HeadSequence, order: HeadOrder) -> Option<Vec<usize>> {
    match order {
        HeadOrder::Reversed => encode_sequential(spec, heads)
            .ok()
            .map(Permutation::into_vec),
        HeadOrder::Forward => {
            let mut remaining = RankSet::full(heads.0.len());
            heads.0.iter().map(|&s| remaining.take(s)).collect()
        }
    }
}

/// The spec family the encoder check sweeps: every optimal and q-ary spec
/// of length `1..=n_max`, plus `random_per_len` seeded random specs per
/// length.
pub fn spec_family(seed: u64, n_max: usize, random_per_len: usize) -> Vec<RepSpec> {
    let mut specs = Vec::new();
    for n in 1..=n_max {
        for d in 1..=n {
            specs.push(optimal_spec(n, d).unwrap());
            for q in 2..=n + 1 {
                if let Ok(s) = kloeve_spec(n, d, q) {
                    specs.push(s);
                }
            }
        }
        let mut rng = SplitMix64::for_stream(seed, n as u64);
        specs.extend((0..random_per_len).map(|_| RepSpec::random(n, &mut rng)));
    }
    specs
}

/// Every message of `spec`, first step slowest.
pub fn all_messages(spec: &RepSpec) -> Vec<Message> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for s in spec.steps() {
        out = out
            .into_iter()
            .flat_map(|m| {
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

/// Natural and sequential encoders agree on every message of every spec in
/// [`spec_family`]`(seed, n_max, 100)`.
pub fn check_encoder_equivalence(seed: u64, n_max: usize) -> CheckReport {
    check_encoder_equivalence_with(seed, n_max, HeadOrder::Reversed)
}

pub fn check_encoder_equivalence_with(seed: u64, n_max: usize, order: HeadOrder) -> CheckReport {
    let mut t = Tally::new(
        "encoder_equivalence",
        format!("n<={n_max} seed={seed} order={order:?}"),
    );
    for spec in spec_family(seed, n_max, 100) {
        check_spec_encoders(&mut t, &spec, order);
    }
    t.finish()
}

/// Encoder agreement on one spec, every message.
pub fn check_spec_encoders_report(spec: &RepSpec, order: HeadOrder) -> CheckReport {
    let mut t = Tally::new(
        "encoder_equivalence",
        format!("spec n={} order={order:?}", spec.len()),
    );
    check_spec_encoders(&mut t, spec, order);
    t.finish()
}

fn check_spec_encoders(t: &mut Tally, spec: &RepSpec, order: HeadOrder) {
    for m in all_messages(spec) {
        let heads = heads_from_message(spec, &m).unwrap();
        let natural = encode_natural(spec, &heads).unwrap().into_vec();
        let sequential = encode_with_order(spec, &heads, order);
        t.check(sequential.as_ref() == Some(&natural), || {
            let spec_text = spec.to_string().trim_end().replace('\n', " | ");
            format!("encoders spec=[{spec_text}] heads={:?}", heads.0)
        });
    }
}

/// Every codeword of `optimal_spec(n, d)` with every noise vector bounded
/// by `ceil(d/2) - 1` decodes to its message.
pub fn check_decoding_radius(n: usize, d: usize) -> Result<CheckReport> {
    check_decoding_radius_capped(n, d, RADIUS_CASE_CAP)
}

pub fn check_decoding_radius_capped(n: usize, d: usize, cap: u64) -> Result<CheckReport> {
    let spec = optimal_spec(n, d)?;
    let radius = (d - 1) / 2;
    let patterns = BigUint::from(2 * radius + 1).pow(n as u32);
    let total = rep_size(&spec) * &patterns;
    if total > BigUint::from(cap) {
        return Err(Error::CapExceeded { size: total, cap });
    }
    let mut t = Tally::new("decoding_radius", format!("n={n} d={d} radius={radius}"));
    let width = 2 * radius as i64 + 1;
    let pattern_count: u64 = patterns.try_into().expect("below cap");
    for m in all_messages(&spec) {
        let heads = heads_from_message(&spec, &m)?;
        let word = encode_sequential(&spec, &heads)?;
        for code in 0..pattern_count {
            let mut rest = code as i64;
            let received: Vec<i64> = word
                .as_slice()
                .iter()
                .map(|&x| {
                    let e = rest % width - radius as i64;
                    rest /= width;
                    x as i64 + e
                })
                .collect();
            let out = decode(&spec, &received)?;
            t.check(out.message == m, || {
                format!("radius n={n} d={d} received={received:?}")
            });
        }
    }
    Ok(t.finish())
}

/// The default suite, run in parallel; report order is fixed.
pub fn run_suite(seed: u64) -> Vec<CheckReport> {
    type Job = Box<dyn FnOnce() -> Vec<CheckReport> + Send>;
    let jobs: Vec<Job> = vec![
        Box::new(|| vec![check_extension_laws(5)]),
        Box::new(|| vec![check_headset_laws(9, 4)]),
        Box::new(|| vec![check_sizes(7), check_size_formulas(40)]),
        Box::new(move || vec![check_encoder_equivalence(seed, 6)]),
        Box::new(|| {
            [(4, 3), (5, 3), (6, 4)]
                .iter()
                .map(|&(n, d)| check_decoding_radius(n, d).expect("within cap"))
                .collect()
        }),
    ];
    std::thread::scope(|scope| {
        let handles: Vec<_> = jobs.into_iter().map(|job| scope.spawn(job)).collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("check panicked"))
            .collect()
    })
}
