mod common;

use common::*;
use ktile::seqcore::{
    classic_fib, classic_lucas, gen_fib, gen_fib_uncached, gen_lucas, gen_lucas_rec, gen_lucas_uncached,
    Natural, SequenceCache,
};
use proptest::prelude::*;

fn nat(v: u64) -> Natural {
    Natural::from(v)
}

#[test]
fn table_one_reproduced_by_all_four_evaluators() {
    let mut c = SequenceCache::new();
    let mut checked = 0;
    for n in 0..12 {
        assert_eq!(classic_fib(n, &mut c).unwrap(), nat(TABLE_FN[n]));
        assert_eq!(gen_fib(3, n, &mut c).unwrap(), nat(TABLE_F3[n]));
        assert_eq!(gen_fib(4, n, &mut c).unwrap(), nat(TABLE_F4[n]));
        assert_eq!(classic_lucas(n, &mut c).unwrap(), nat(TABLE_LN[n]));
        assert_eq!(gen_lucas(3, n, &mut c).unwrap(), nat(TABLE_L3[n]));
        assert_eq!(gen_lucas(4, n, &mut c).unwrap(), nat(TABLE_L4[n]));
        checked += 6;
    }
    assert_eq!(checked, 72);
}

#[test]
fn recurrence_holds_on_grid() {
    let mut c = SequenceCache::new();
    for k in 2..=6 {
        for n in k..=200 {
            let lhs = gen_fib(k, n, &mut c).unwrap();
            let rhs = gen_fib(k, n - 1, &mut c).unwrap() + gen_fib(k, n - k, &mut c).unwrap();
            assert_eq!(lhs, rhs, "k={k} n={n}");
        }
    }
}

#[test]
fn lucas_routes_agree_from_2k() {
    let mut c = SequenceCache::new();
    for k in 2..=6 {
        for n in 2 * k..=200 {
            assert_eq!(gen_lucas_rec(k, n).unwrap(), gen_lucas(k, n, &mut c).unwrap(), "k={k} n={n}");
        }
    }
}

#[test]
fn lucas_recurrence_fails_strictly_between_k_and_2k() {
    // L(3,4) = 5 but L(3,3) + L(3,1) = 4 + 2
    let mut c = SequenceCache::new();
    let l = |n, c: &mut SequenceCache| gen_lucas(3, n, c).unwrap();
    assert_eq!(l(4, &mut c), nat(5));
    assert_eq!(l(3, &mut c) + l(1, &mut c), nat(6));
}

#[test]
fn gen_fib_strictly_increasing() {
    let mut c = SequenceCache::new();
    for k in 2..=6 {
        for n in 1..=200 {
            assert!(gen_fib(k, n, &mut c).unwrap() > gen_fib(k, n - 1, &mut c).unwrap());
        }
    }
}

#[test]
fn exceeds_u64_without_loss() {
    // F(2,n) = classical Fib(n+2); Fib(100) = 354224848179261915075
    let mut c = SequenceCache::new();
    assert_eq!(
        gen_fib(2, 98, &mut c).unwrap(),
        "354224848179261915075".parse::<Natural>().unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cache_transparency(k in 2usize..12, n in 0usize..400, warm in 0usize..400) {
        let mut cold = SequenceCache::new();
        let mut hot = SequenceCache::new();
        gen_fib(k, warm, &mut hot).unwrap();
        gen_lucas(k, warm, &mut hot).unwrap();
        let f = gen_fib(k, n, &mut cold).unwrap();
        prop_assert_eq!(&f, &gen_fib(k, n, &mut hot).unwrap());
        prop_assert_eq!(&f, &gen_fib_uncached(k, n).unwrap());
        let l = gen_lucas(k, n, &mut cold).unwrap();
        prop_assert_eq!(&l, &gen_lucas(k, n, &mut hot).unwrap());
        prop_assert_eq!(&l, &gen_lucas_uncached(k, n).unwrap());
    }

    #[test]
    fn small_values_match_independent_loop(k in 2usize..8, n in 0usize..60) {
        let mut c = SequenceCache::new();
        prop_assert_eq!(gen_fib(k, n, &mut c).unwrap(), nat(small_f(k, n)));
        prop_assert_eq!(gen_lucas(k, n, &mut c).unwrap(), nat(small_l(k, n)));
    }

    #[test]
    fn merged_worker_caches_agree(k in 2usize..6, a in 0usize..80, b in 0usize..80) {
        let mut left = SequenceCache::new();
        let mut right = SequenceCache::new();
        gen_lucas(k, a, &mut left).unwrap();
        gen_lucas(k, b, &mut right).unwrap();
        left.merge(right).unwrap();
        prop_assert_eq!(gen_fib(k, a.max(b), &mut left).unwrap(), gen_fib_uncached(k, a.max(b)).unwrap());
    }
}
