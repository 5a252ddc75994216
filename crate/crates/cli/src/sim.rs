//! Bounded-magnitude noise channel simulation.
//!
//! Trial `i` draws everything from `SplitMix64::for_stream(seed, i)`: first
//! one uniform rank per step (`below(|S^(j)|)` for `j = 0..n`), then one noise
//! value per symbol (`symmetric(E)` for positions `0..n`). Results therefore
//! do not depend on how trials are scheduled across threads.

use permcode::rng::SplitMix64;
use permcode::{decode, encode_sequential, heads_from_message, Distance, Message, RepSpec};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub spec: RepSpec,
    /// Target distance, reported alongside the counts.
    pub d: Distance,
    pub noise_max: u64,
    pub trials: u64,
    pub seed: u64,
    /// Clip received symbols into `[0, n)`.
    pub clip: bool,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub n: usize,
    pub d: String,
    pub noise_max: u64,
    pub trials: u64,
    pub word_errors: u64,
    pub wer: f64,
    pub seed: u64,
}

pub const CSV_HEADER: &str = "n,d,noise_max,trials,word_errors,wer,seed";

impl SimReport {
    pub fn wer_text(&self) -> String {
        format!("{:.6}", self.wer)
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{CSV_HEADER}\n{},{},{},{},{},{},{}\n",
            self.n,
            self.d,
            self.noise_max,
            self.trials,
            self.word_errors,
            self.wer_text(),
            self.seed
        )
    }

    pub fn to_text(&self) -> String {
        format!(
            "n={}\nd={}\nnoise_max={}\ntrials={}\nword_errors={}\nwer={}\nseed={}\n",
            self.n,
            self.d,
            self.noise_max,
            self.trials,
            self.word_errors,
            self.wer_text(),
            self.seed
        )
    }
}

/// One trial; returns whether the decoded message differs from the sent one.
pub fn run_trial(spec: &RepSpec, noise_max: u64, clip: bool, seed: u64, index: u64) -> bool {
    let mut rng = SplitMix64::for_stream(seed, index);
    let message = Message(
        spec.steps()
            .iter()
            .map(|s| rng.below(s.len() as u64) as usize)
            .collect(),
    );
    let heads = heads_from_message(spec, &message).expect("ranks drawn in range");
    let word = encode_sequential(spec, &heads).expect("heads drawn from spec");
    let top = spec.len() as i64 - 1;
    let received: Vec<i64> = word
        .as_slice()
        .iter()
        .map(|&x| {
            let r = x as i64 + rng.symmetric(noise_max);
            if clip {
                r.clamp(0, top.max(0))
            } else {
                r
            }
        })
        .collect();
    decode(spec, &received).expect("length matches").message != message
}

pub fn run_simulation(cfg: &SimConfig) -> SimReport {
    let count = || {
        (0..cfg.trials)
            .into_par_iter()
            .filter(|&i| run_trial(&cfg.spec, cfg.noise_max, cfg.clip, cfg.seed, i))
            .count() as u64
    };
    let word_errors = match cfg.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(count),
        None => count(),
    };
    SimReport {
        n: cfg.spec.len(),
        d: cfg.d.to_string(),
        noise_max: cfg.noise_max,
        trials: cfg.trials,
        word_errors,
        wer: word_errors as f64 / cfg.trials as f64,
        seed: cfg.seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use permcode::optimal_spec;

    fn cfg(n: usize, d: usize, noise_max: u64, trials: u64, seed: u64) -> SimConfig {
        SimConfig {
            spec: optimal_spec(n, d).unwrap(),
            d: Distance::Finite(d),
            noise_max,
            trials,
            seed,
            clip: false,
            threads: None,
        }
    }

    #[test]
    fn zero_noise_never_errs() {
        let r = run_simulation(&cfg(20, 3, 0, 500, 9));
        assert_eq!(r.word_errors, 0);
        assert_eq!(r.wer_text(), "0.000000");
    }

    #[test]
    fn within_radius_never_errs() {
        for seed in [1, 2, 3] {
            let r = run_simulation(&cfg(30, 5, 2, 300, seed));
            assert_eq!(r.word_errors, 0);
            let mut c = cfg(30, 5, 2, 300, seed);
            c.clip = true;
            assert_eq!(run_simulation(&c).word_errors, 0);
        }
    }

    #[test]
    fn heavy_noise_produces_errors() {
        let r = run_simulation(&cfg(30, 2, 6, 200, 4));
        assert!(r.word_errors > 0);
        assert!(r.word_errors <= r.trials);
    }

    #[test]
    fn deterministic_across_threads() {
        let mut a = cfg(40, 4, 3, 400, 77);
        a.threads = Some(1);
        let mut b = a.clone();
        b.threads = Some(4);
        let (ra, rb) = (run_simulation(&a), run_simulation(&b));
        assert_eq!(ra.to_csv(), rb.to_csv());
        assert_eq!(ra.to_csv(), run_simulation(&a).to_csv());
    }

    #[test]
    fn csv_layout() {
        let r = run_simulation(&cfg(8, 2, 0, 10, 5));
        assert_eq!(
            r.to_csv(),
            "n,d,noise_max,trials,word_errors,wer,seed\n8,2,0,10,0,0.000000,5\n"
        );
    }
}
