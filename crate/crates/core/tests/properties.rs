mod common;

use pnoise_core::denoise::{denoising_betti_sequence, Mode};
use pnoise_core::exactalg::{int, rat, PrimeField, Rational};
use pnoise_core::fcf::{
    bar_r1, bar_search, bar_zero_check, fcf_interleaving_distance, Engine, Extended, FeatureCountingFunction,
};
use pnoise_core::noise::{contains, noise_size, NoiseEvaluator, NoiseSize, NoiseSpec};
use pnoise_core::structure::{rank, span_submodule};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SPECS_R2: &[&str] = &[
    "cone:1,1",
    "cone:1,0;0,1",
    "cone:1,2",
    "vnorm:1,0;0,1",
    "vnorm:1,1",
    "domain:@0=empty;@1=box(0,0,inf,1)|box(0,0,1,inf);@2=box(0,0,inf,inf)",
    "dim:0@0,1@1,2@2,inf@3",
    "cone:1,1&dim:0@0,1@1,2@2,inf@3",
];

fn spec(s: &str) -> NoiseSpec {
    s.parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn noise_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = PrimeField::f2();
        let b = common::random_module(&mut rng, k, 2, 3, 3);
        let count = rng.gen_range(0..=2);
        let gens = common::random_elements(&mut rng, &b, count);
        let sub = span_submodule(&b, &gens).unwrap();
        let (a, _) = sub.to_module();
        let (c, _) = sub.quotient();
        for s in SPECS_R2 {
            let s = spec(s);
            let z = pnoise_core::gridmod::GridModule::zero(k, 2, int(1), 3);
            prop_assert_eq!(noise_size(&s, &z).unwrap(), NoiseSize::zero());
            let (na, nb, nc) = (noise_size(&s, &a).unwrap(), noise_size(&s, &b).unwrap(), noise_size(&s, &c).unwrap());
            prop_assert!(na <= nb && nc <= nb, "{s}: sub {na} quotient {nc} total {nb}");
            prop_assert!(nb <= na.plus(&nc), "{s}: total {nb} above {na} + {nc}");
            let mut was = false;
            for e in 0..6 {
                let now = contains(&s, &b, rat(e, 2)).unwrap();
                prop_assert!(!was || now);
                was = now;
            }
        }
    }

    #[test]
    fn r1_bar_matches_exhaustive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_r1(&mut rng, PrimeField::f2(), 5, 3);
        let s = spec("cone:1");
        let formula = bar_r1(&s, &f).unwrap();
        let search = bar_search(&s, &f, &[], Engine::Exhaustive).unwrap();
        for c in NoiseEvaluator::new(&s, &f).unwrap().candidates() {
            for t in [c, c + rat(1, 2)] {
                prop_assert_eq!(formula.evaluate(t), search.function.evaluate(t), "t = {}", t);
            }
        }
    }

    #[test]
    fn bar_properties(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = PrimeField::f2();
        let s = spec("cone:1,1");
        let f = common::random_module(&mut rng, k, 2, 2, 2);
        let g = common::random_module(&mut rng, k, 2, 2, 1);
        let bf = bar_search(&s, &f, &[], Engine::Exhaustive).unwrap().function;
        prop_assert_eq!(bf.initial(), rank(&f));
        let gens = common::random_elements(&mut rng, &f, 1);
        let (quot, _) = span_submodule(&f, &gens).unwrap().quotient();
        let bq = bar_search(&s, &quot, &[], Engine::Exhaustive).unwrap().function;
        let bg = bar_search(&s, &g, &[], Engine::Exhaustive).unwrap().function;
        let fg = f.direct_sum(&g).unwrap();
        let bfg = bar_search(&s, &fg, &[], Engine::Exhaustive).unwrap().function;
        for t in (0..8).map(|i| rat(i, 2)) {
            prop_assert!(bf.evaluate(t) >= bq.evaluate(t));
            prop_assert!(bfg.evaluate(t) >= bf.evaluate(t).max(bg.evaluate(t)));
            prop_assert!(bfg.evaluate(t) <= bf.evaluate(t) + bg.evaluate(t));
            if t > int(0) {
                prop_assert_eq!(bar_zero_check(&s, &f, t).unwrap(), bf.evaluate(t) == 0);
            }
        }
    }

    #[test]
    fn quotient_denoising_nests(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_r1(&mut rng, PrimeField::new(3).unwrap(), 6, 3);
        let ts: Vec<Rational> = (0..8).map(|i| rat(i, 2)).collect();
        prop_assert!(denoising_betti_sequence(&spec("cone:1"), &f, &ts, Mode::Quotient, Engine::Exhaustive).is_ok());
    }
}

/// `f` and `g` are `eps`-interleaved, checked at every point where either
/// function or its shift can change and between them.
fn interleaved(f: &FeatureCountingFunction, g: &FeatureCountingFunction, eps: Rational) -> bool {
    let mut ts = vec![int(0)];
    for h in [f, g] {
        for (s, _) in h.steps() {
            let q = s.value();
            for x in [q, q - eps] {
                if x >= int(0) {
                    ts.push(x);
                }
            }
        }
    }
    ts.sort();
    ts.dedup();
    let tiny = rat(1, 1000);
    let mut probes = ts.clone();
    for w in ts.windows(2) {
        probes.push((w[0] + w[1]) / 2);
    }
    for &t in &ts {
        probes.push(t + tiny);
    }
    probes.iter().all(|&t| f.evaluate(t) >= g.evaluate(t + eps) && g.evaluate(t) >= f.evaluate(t + eps))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fcf_metric_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g, h) = (common::random_fcf(&mut rng), common::random_fcf(&mut rng), common::random_fcf(&mut rng));
        prop_assert_eq!(fcf_interleaving_distance(&f, &f), Extended::Finite(int(0)));
        let (fg, gf) = (fcf_interleaving_distance(&f, &g), fcf_interleaving_distance(&g, &f));
        prop_assert_eq!(fg, gf);
        let (gh, fh) = (fcf_interleaving_distance(&g, &h), fcf_interleaving_distance(&f, &h));
        if let (Extended::Finite(a), Extended::Finite(b)) = (fg, gh) {
            match fh {
                Extended::Finite(c) => prop_assert!(c <= a + b),
                Extended::Infinite => prop_assert!(false, "triangle inequality fails"),
            }
        }
    }

    #[test]
    fn fcf_distance_matches_interleaving_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g) = (common::random_fcf(&mut rng), common::random_fcf(&mut rng));
        match fcf_interleaving_distance(&f, &g) {
            Extended::Finite(d) => {
                prop_assert!(interleaved(&f, &g, d + rat(1, 1000)));
                if d > int(0) {
                    prop_assert!(!interleaved(&f, &g, d - rat(1, 1000)));
                }
            }
            Extended::Infinite => prop_assert!(!interleaved(&f, &g, int(1000))),
        }
    }
}
