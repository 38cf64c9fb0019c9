mod common;

use pnoise_core::barcode1::{decompose, reconstruct, Barcode};
use pnoise_core::exactalg::{int, PrimeField};
use pnoise_core::gridmod::{Bar, GridModule};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Rank of `F(a <= b)`; zero when `a` is negative.
fn rk(f: &GridModule, a: i64, b: usize) -> i64 {
    if a < 0 {
        return 0;
    }
    f.evaluate_map(&[a as usize], &[b]).unwrap().rank() as i64
}

/// Bar multiplicities from the rank function alone: `[s, e)` occurs
/// `r(s,e-1) - r(s-1,e-1) - r(s,e) + r(s-1,e)` times, and past the box the
/// module is constant.
fn oracle(f: &GridModule) -> Vec<(usize, Option<usize>)> {
    let n = f.size();
    let mut out = Vec::new();
    for s in 0..=n {
        let si = s as i64;
        for e in s + 1..=n {
            let m = rk(f, si, e - 1) - rk(f, si - 1, e - 1) - rk(f, si, e) + rk(f, si - 1, e);
            out.extend(std::iter::repeat_n((s, Some(e)), m as usize));
        }
        let m = rk(f, si, n) - rk(f, si - 1, n);
        out.extend(std::iter::repeat_n((s, None), m as usize));
    }
    out.sort();
    out
}

fn sorted(b: &Barcode) -> Vec<(usize, Option<usize>)> {
    let mut v = b.intervals();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn decompose_matches_rank_oracle(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = PrimeField::new(p).unwrap();
        let f = common::random_r1(&mut rng, k, 6, 3);
        prop_assert_eq!(sorted(&decompose(&f).unwrap()), oracle(&f));
    }

    #[test]
    fn reconstruct_preserves_ranks(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = PrimeField::f2();
        let f = common::random_r1(&mut rng, k, 6, 3);
        let g = reconstruct(&decompose(&f).unwrap(), k, f.size()).unwrap();
        for a in 0..=f.size() {
            for b in a..=f.size() {
                prop_assert_eq!(rk(&f, a as i64, b), rk(&g, a as i64, b));
            }
        }
    }

    #[test]
    fn barcode_round_trip(bars in prop::collection::vec((0usize..6, prop::option::of(1usize..4)), 0..6)) {
        let n = 6;
        let mut finite = Vec::new();
        let mut frees = Vec::new();
        for (s, len) in bars {
            match len {
                Some(l) if s + l <= n => finite.push(Bar { start: vec![s], end: Some(vec![s + l]) }),
                _ => frees.push(vec![s]),
            }
        }
        let code = Barcode::new(int(1), finite, frees);
        let f = reconstruct(&code, PrimeField::f2(), n).unwrap();
        prop_assert_eq!(sorted(&decompose(&f).unwrap()), sorted(&code));
    }
}
