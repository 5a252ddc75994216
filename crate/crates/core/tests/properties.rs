use permcode::rng::SplitMix64;
use permcode::*;
use proptest::prelude::*;

fn arb_perm(max_len: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_len)
        .prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn arb_spec(max_len: usize) -> impl Strategy<Value = RepSpec> {
    (1..=max_len, any::<u64>()).prop_map(|(n, seed)| RepSpec::random(n, &mut SplitMix64::new(seed)))
}

proptest! {
    #[test]
    fn extend_contract_inverse(p in arb_perm(12), s in 0usize..13) {
        prop_assume!(s <= p.len());
        let e = p.extend(s).unwrap();
        prop_assert_eq!(e.as_slice()[0], s);
        prop_assert_eq!(e.contract().unwrap(), (p, s));
    }

    #[test]
    fn extension_grows_distance_by_at_most_one(p in arb_perm(9), seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let n = p.len();
        let q = {
            let mut v = p.as_slice().to_vec();
            for i in (1..n).rev() {
                v.swap(i, rng.below(i as u64 + 1) as usize);
            }
            Permutation::new(v).unwrap()
        };
        let s = rng.below(n as u64 + 1) as usize;
        let d = chebyshev(&p, &q).unwrap();
        let de = chebyshev(&p.extend(s).unwrap(), &q.extend(s).unwrap()).unwrap();
        prop_assert!(de == d || de == d + 1);
    }

    #[test]
    fn encoders_agree_and_decode_cleanly(spec in arb_spec(40), seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let m = Message(spec.steps().iter().map(|s| rng.below(s.len() as u64) as usize).collect());
        let heads = heads_from_message(&spec, &m).unwrap();
        let word = encode_sequential(&spec, &heads).unwrap();
        prop_assert_eq!(&word, &encode_natural(&spec, &heads).unwrap());
        let received: Vec<i64> = word.as_slice().iter().map(|&x| x as i64).collect();
        prop_assert_eq!(decode(&spec, &received).unwrap().message, m);
    }

    #[test]
    fn certified_specs_decode_within_radius(n in 2usize..60, d in 1usize..9, seed in any::<u64>()) {
        prop_assume!(d <= n);
        let spec = optimal_spec(n, d).unwrap();
        let mut rng = SplitMix64::new(seed);
        let m = Message(spec.steps().iter().map(|s| rng.below(s.len() as u64) as usize).collect());
        let word = encode_sequential(&spec, &heads_from_message(&spec, &m).unwrap()).unwrap();
        let radius = ((d - 1) / 2) as u64;
        let received: Vec<i64> = word.as_slice().iter().map(|&x| x as i64 + rng.symmetric(radius)).collect();
        prop_assert_eq!(decode(&spec, &received).unwrap().message, m);
    }

    #[test]
    fn spec_text_round_trips(spec in arb_spec(30)) {
        prop_assert_eq!(RepSpec::parse(&spec.to_string()).unwrap(), spec);
    }
}
