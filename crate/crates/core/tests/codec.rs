mod common;

use std::collections::BTreeSet;

use matchflip::dyck::{
    bits_to_symmetric, enumerate_range, is_dyck, next_dyck_word, symmetric_to_bits, DyckWords, Ranker, MAX_RANK_N,
};
use matchflip::{enumerate_matchings, from_dyck, rank, to_dyck, unrank, DyckPath, Matching, Step};
use proptest::prelude::*;

#[test]
fn enumeration_agrees_with_brute_force() {
    for n in 1..=8 {
        let ours: BTreeSet<String> = enumerate_matchings(n).map(|m| m.to_pairs_string()).collect();
        let brute: BTreeSet<String> = common::brute_force_matchings(n).iter().map(|m| m.to_pairs_string()).collect();
        assert_eq!(ours, brute, "n={n}");
    }
}

#[test]
fn enumeration_is_lexicographic_and_ranked() {
    for n in 1..=9 {
        let ranker = Ranker::new(n).unwrap();
        // Map U < D onto '0' < '1' so plain string order is the word order.
        let words: Vec<String> =
            enumerate_matchings(n).map(|m| to_dyck(&m).to_string().replace('U', "0").replace('D', "1")).collect();
        assert!(words.windows(2).all(|w| w[0] < w[1]), "n={n}");
        for (i, m) in enumerate_matchings(n).enumerate() {
            assert_eq!(ranker.rank(&m), i as u64);
            assert_eq!(ranker.unrank(i as u64).unwrap(), m);
        }
    }
}

#[test]
fn extreme_ranks() {
    for n in 1..=12 {
        let r = Ranker::new(n).unwrap();
        let first = r.unrank(0).unwrap();
        let last = r.unrank(r.count() - 1).unwrap();
        assert_eq!(to_dyck(&first).to_string(), "U".repeat(n) + &"D".repeat(n));
        assert_eq!(to_dyck(&last).to_string(), "UD".repeat(n));
        assert!(r.unrank(r.count()).is_err());
    }
    assert_eq!(rank(&unrank(5, 41).unwrap()).unwrap(), 41);
    assert!(Ranker::new(MAX_RANK_N + 1).is_err());
}

#[test]
fn ranges_partition_the_enumeration() {
    let n = 7;
    let all: Vec<Matching> = enumerate_matchings(n).collect();
    let mut joined = Vec::new();
    for (a, b) in [(0, 100), (100, 101), (101, 429)] {
        joined.extend(enumerate_range(n, a, b).unwrap());
    }
    assert_eq!(joined, all);
    let words: Vec<DyckPath> = DyckWords::range(n, 10, 20).unwrap().collect();
    assert_eq!(words.len(), 10);
    // Ranges are clamped to the end of the enumeration.
    assert_eq!(enumerate_range(n, 420, 10_000).unwrap().count(), 9);
    assert_eq!(enumerate_range(n, 500, 600).unwrap().count(), 0);
}

#[test]
fn successor_visits_every_word() {
    let mut steps = vec![Step::Up, Step::Up, Step::Up, Step::Down, Step::Down, Step::Down];
    let mut count = 1;
    while next_dyck_word(&mut steps) {
        assert!(is_dyck(&steps));
        count += 1;
    }
    assert_eq!(count, 5);
}

#[test]
fn perimeter_edges_are_peaks_except_the_closing_one() {
    for n in 1..=10 {
        for m in enumerate_matchings(n) {
            let p = to_dyck(&m);
            let closing = m.contains(matchflip::Chord::new(1, 2 * n).unwrap());
            let expected = m.perimeter_count() - usize::from(closing && n > 1);
            assert_eq!(p.peaks(), expected, "{m}");
        }
    }
}

#[test]
fn symmetric_codes_are_all_balanced_strings() {
    for n in (2..=10).step_by(2) {
        let codes: BTreeSet<String> = enumerate_matchings(n)
            .filter(|m| m.is_centrally_symmetric())
            .map(|m| symmetric_to_bits(&m).unwrap())
            .collect();
        assert_eq!(codes.len() as u128, common::binom(n, n / 2));
        for c in &codes {
            assert_eq!(c.len(), n);
            assert_eq!(c.matches('1').count(), n / 2);
        }
    }
    assert!(symmetric_to_bits(&"1-4,2-3,5-6,7-8".parse().unwrap()).is_err());
    assert!(bits_to_symmetric("110").is_err());
    assert!(bits_to_symmetric("1100").is_ok());
}

#[test]
fn dyck_text_forms() {
    let p: DyckPath = "(()())".parse().unwrap();
    assert_eq!(p.to_string(), "UUDUDD");
    assert_eq!(p.to_parens(), "(()())");
    assert_eq!(p.peaks(), 2);
    assert_eq!(p.band_weight(), 1);
    assert!("UDDU".parse::<DyckPath>().is_err());
    assert_eq!(from_dyck(&p).unwrap(), "1-6,2-3,4-5".parse().unwrap());
}

proptest! {
    #[test]
    fn rank_round_trip_large_n(n in 1usize..=MAX_RANK_N, seed in any::<u64>()) {
        let r = Ranker::new(n).unwrap();
        let k = seed % r.count();
        let m = r.unrank(k).unwrap();
        prop_assert_eq!(r.rank(&m), k);
        prop_assert_eq!(from_dyck(&to_dyck(&m)).unwrap(), m.clone());
        prop_assert_eq!(r.rank_path(&to_dyck(&m)), k);
    }
}
