mod common;

use common::*;
use knotclass_core::Notation;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check_canonical(v: &Notation) {
    let c = v.canonicalize();
    assert_eq!(c, oracle_canonical(v), "{v}");
    assert_eq!(c.canonicalize(), c, "idempotence at {v}");
    assert!(c.is_canonical());
    assert_eq!(v.is_canonical(), *v == c, "{v}");
}

#[test]
fn canonical_form_exhaustive_small() {
    for n in 1..=5 {
        let all = all_notations(n);
        assert_eq!(all.len(), (1..=n).map(|k| 2 * k - 1).product::<usize>() << n);
        for v in &all {
            check_canonical(v);
        }
    }
}

#[test]
fn orbit_matches_walks_and_is_invariant() {
    for n in 1..=4 {
        for v in all_notations(n) {
            let orbit = v.orbit();
            assert_eq!(orbit, oracle_orbit(&v), "{v}");
            let c = v.canonicalize();
            for w in &orbit {
                assert_eq!(w.canonicalize(), c, "{w} in the orbit of {v}");
            }
            assert_eq!(orbit.iter().next().unwrap(), &c);
        }
    }
}

#[test]
fn canonical_form_random_up_to_eight() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=8);
        let v = random_notation(&mut rng, n);
        check_canonical(&v);
        let s = rng.gen_range(0..2 * n);
        let w = v.relabel(s, rng.gen()).unwrap();
        assert_eq!(w.canonicalize(), v.canonicalize(), "{v} vs {w}");
    }
}

#[test]
fn mirror_key_is_mirror_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..2_000 {
        let n = rng.gen_range(1..=8);
        let v = random_notation(&mut rng, n);
        assert_eq!(v.mirror_key(), v.mirror().mirror_key());
        assert_eq!(v.canonicalize_mirror(), v.mirror().canonicalize());
    }
}

#[test]
fn cyclic_primality_matches_interval_search() {
    for n in 1..=5 {
        for v in all_parity_valid(n) {
            assert_eq!(v.is_cyclically_prime(), oracle_cyclically_prime(&v), "{v}");
            let factors = v.prime_factors();
            assert_eq!(factors.iter().map(Notation::crossings).sum::<usize>(), n, "{v}");
            assert!(factors.iter().all(|f| f.is_cyclically_prime()), "{v}");
            assert_eq!(factors.len() == 1, v.is_cyclically_prime(), "{v}");
        }
    }
}

fn arb_notation() -> impl Strategy<Value = Notation> {
    (1usize..=8, any::<u64>()).prop_map(|(n, seed)| random_notation(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

proptest! {
    #[test]
    fn text_round_trip(v in arb_notation()) {
        let text = v.to_string();
        prop_assert_eq!(text.parse::<Notation>().unwrap(), v.clone());
        let spaced = text.replace(')', ") ").replace(',', " , ");
        prop_assert_eq!(spaced.parse::<Notation>().unwrap(), v);
    }

    #[test]
    fn mirror_is_an_involution(v in arb_notation()) {
        prop_assert_eq!(v.mirror().mirror(), v.clone());
        prop_assert_eq!(v.mirror().crossings(), v.crossings());
    }

    #[test]
    fn relabel_preserves_crossing_count_and_orbit(v in arb_notation(), s in 0usize..16, rev in any::<bool>()) {
        let w = v.relabel(s % v.label_count(), rev).unwrap();
        prop_assert_eq!(w.crossings(), v.crossings());
        prop_assert!(v.orbit().contains(&w));
    }
}

#[test]
fn parse_errors() {
    assert!("(1,2)(2,3)".parse::<Notation>().is_err());
    assert!("(1,5)".parse::<Notation>().is_err());
    assert!("(1,2".parse::<Notation>().is_err());
    assert!("(1,2,3)".parse::<Notation>().is_err());
    assert!("()0".parse::<Notation>().unwrap().is_empty());
    assert!("(1,2)".parse::<Notation>().unwrap().relabel(2, false).is_err());
}
