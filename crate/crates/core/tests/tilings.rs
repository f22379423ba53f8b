mod common;

use std::collections::BTreeSet;

use common::*;
use ktile::seqcore::{gen_fib, gen_lucas, Natural, SequenceCache};
use ktile::tilings::{
    decode, encode, enumerate_type_a, enumerate_type_b, is_type_a, is_type_b, parse_pieces, tail, Piece,
    TailSize, Tiling, DEFAULT_ENUM_LIMIT,
};
use proptest::prelude::*;

fn codes(ts: &[Tiling]) -> Vec<String> {
    ts.iter().map(encode).collect()
}

#[test]
fn enumerators_match_unpruned_brute_force() {
    for k in 2..=5 {
        for n in 0..=10 {
            assert_eq!(codes(&enumerate_type_a(k, n, DEFAULT_ENUM_LIMIT).unwrap()), naive_a(k, n), "A k={k} n={n}");
            assert_eq!(codes(&enumerate_type_b(k, n, DEFAULT_ENUM_LIMIT).unwrap()), naive_b(k, n), "B k={k} n={n}");
        }
    }
}

#[test]
fn predicates_match_naive_on_every_cover() {
    for k in 2..=4 {
        for n in 0..=9 {
            for word in all_covers(k, n) {
                let p = parse_pieces(&word).unwrap();
                assert_eq!(is_type_a(k, n, &p), naive_type_a(k, &word), "{word}");
                assert_eq!(is_type_b(k, n, &p), naive_type_b(k, n, &word), "{word}");
            }
        }
    }
}

#[test]
fn enumeration_counts_equal_sequences() {
    let mut c = SequenceCache::new();
    for k in 2..=5 {
        for n in 0..=16 {
            let a = enumerate_type_a(k, n, DEFAULT_ENUM_LIMIT).unwrap().len();
            let b = enumerate_type_b(k, n, DEFAULT_ENUM_LIMIT).unwrap().len();
            assert_eq!(Natural::from(a), gen_fib(k, n, &mut c).unwrap(), "F k={k} n={n}");
            assert_eq!(Natural::from(b), gen_lucas(k, n, &mut c).unwrap(), "L k={k} n={n}");
        }
    }
}

#[test]
fn type_b_subset_of_type_a_equal_iff_n_at_most_k() {
    for k in 2..=5 {
        for n in 0..=14 {
            let a: BTreeSet<_> = codes(&enumerate_type_a(k, n, DEFAULT_ENUM_LIMIT).unwrap()).into_iter().collect();
            let b: BTreeSet<_> = codes(&enumerate_type_b(k, n, DEFAULT_ENUM_LIMIT).unwrap()).into_iter().collect();
            assert!(b.is_subset(&a));
            // F(k,k) = L(k,k) = k+1, so the sets still coincide at n = k
            assert_eq!(a == b, n <= k, "k={k} n={n}");
        }
    }
}

#[test]
fn type_a_never_ends_black_once_n_reaches_k() {
    for k in 2..=5 {
        for n in k..=14 {
            for t in enumerate_type_a(k, n, DEFAULT_ENUM_LIMIT).unwrap() {
                assert_ne!(t.pieces().last(), Some(&Piece::Black), "{t}");
            }
        }
    }
}

#[test]
fn enumeration_is_sorted_and_unique() {
    for k in 2..=4 {
        let c = codes(&enumerate_type_a(k, 14, DEFAULT_ENUM_LIMIT).unwrap());
        assert!(c.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn tail_classes_partition_type_b() {
    let mut c = SequenceCache::new();
    for k in 2..=5 {
        for n in 2 * k..=16 {
            let mut short = 0u64;
            let mut long = 0u64;
            let mut offsets = BTreeSet::new();
            for t in enumerate_type_b(k, n, DEFAULT_ENUM_LIMIT).unwrap() {
                let d = tail(&t).unwrap();
                match d.size {
                    TailSize::KMinus1 => {
                        assert!(d.gray_offset.is_none());
                        short += 1;
                    }
                    TailSize::K => {
                        let off = d.gray_offset.unwrap();
                        assert!((1..k).contains(&off));
                        offsets.insert(off);
                        long += 1;
                    }
                }
            }
            assert_eq!(Natural::from(short), gen_fib(k, n - (k - 1), &mut c).unwrap());
            assert_eq!(
                Natural::from(long),
                gen_fib(k, n - (2 * k - 1), &mut c).unwrap() * (k - 1)
            );
            assert_eq!(offsets.len(), k - 1);
        }
    }
}

#[test]
fn per_example_counts() {
    assert_eq!(enumerate_type_a(3, 10, DEFAULT_ENUM_LIMIT).unwrap().len(), 60);
    assert_eq!(enumerate_type_b(4, 9, DEFAULT_ENUM_LIMIT).unwrap().len(), 19);
    assert_eq!(decode(3, 6, "bgg").unwrap().black_cell(), 1);
}

fn arb_tiling() -> impl Strategy<Value = Tiling> {
    (2usize..5, 0usize..12)
        .prop_flat_map(|(k, n)| {
            let all = enumerate_type_a(k, n, DEFAULT_ENUM_LIMIT).unwrap();
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
}

proptest! {
    #[test]
    fn codec_round_trip(t in arb_tiling()) {
        let s = encode(&t);
        prop_assert_eq!(s.len(), t.pieces().len());
        prop_assert_eq!(decode(t.k(), t.n(), &s).unwrap(), t);
    }

    #[test]
    fn decode_accepts_exactly_type_a(k in 2usize..5, word in "[bgw]{1,9}") {
        let p = parse_pieces(&word).unwrap();
        let width: usize = p.iter().map(|x| x.width(k)).sum();
        let n = width - 1;
        prop_assert_eq!(decode(k, n, &word).is_ok(), naive_type_a(k, &word));
    }
}
