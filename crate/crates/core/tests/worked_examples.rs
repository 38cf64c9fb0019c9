use pnoise_core::catalog;
use pnoise_core::exactalg::{int, rat, Rational};
use pnoise_core::fcf::{bar_r1, bar_search, Engine, FeatureCountingFunction, StepStart};
use pnoise_core::noise::{noise_size, NoiseSpec};
use pnoise_core::structure::span_submodule;

fn spec(s: &str) -> NoiseSpec {
    s.parse().unwrap()
}

fn steps(v: &[(StepStart, usize)]) -> FeatureCountingFunction {
    FeatureCountingFunction::new(v.to_vec()).unwrap()
}

#[test]
fn mono_square_bar() {
    let f = catalog::mono_square();
    let out = bar_search(&spec("cone:1,1"), &f, &[], Engine::Exhaustive).unwrap();
    assert!(out.is_exact());
    assert_eq!(out.function, steps(&[(StepStart::Closed(int(0)), 2), (StepStart::Open(int(1)), 1)]));
}

#[test]
fn five_step_bar() {
    let f = catalog::five_step();
    let b = bar_r1(&spec("cone:1"), &f).unwrap();
    let expect = steps(&[(StepStart::Closed(int(0)), 4), (StepStart::Open(int(1)), 2), (StepStart::Open(int(2)), 1)]);
    assert_eq!(b, expect);
    let ex = bar_search(&spec("cone:1"), &f, &[], Engine::Exhaustive).unwrap();
    assert_eq!(ex.function, expect);
}

#[test]
fn staircase_bar_at_two() {
    let f = catalog::staircase();
    let out = bar_search(&spec("cone:1,1"), &f, &[int(2)], Engine::Exhaustive).unwrap();
    assert_eq!(out.function.evaluate(int(2)), 2);
}

#[test]
fn three_generators_sum_is_close() {
    let f = catalog::three_generators();
    let s = spec("cone:1,1,1");
    let (sub, _) = span_submodule(&f, &[catalog::three_generators_sum()]).unwrap().quotient();
    assert!(noise_size(&s, &sub).unwrap().admits(int(1)));
    for g in catalog::three_generators_generators() {
        let (q, _) = span_submodule(&f, &[g]).unwrap().quotient();
        assert!(!noise_size(&s, &q).unwrap().admits(int(1)));
    }
    let orbit = bar_search(&s, &f, &[rat(3, 2)], Engine::GeneratorOrbit).unwrap();
    assert_eq!(orbit.function.evaluate(rat(3, 2)), 1);
    let _: Rational = int(0);
}

mod denoising {
    use super::*;
    use pnoise_core::denoise::{denoising_betti_sequence, quotient_denoise, subfunctor_denoise, Mode};
    use pnoise_core::structure::rank;

    #[test]
    fn five_step_quotients() {
        let f = catalog::five_step();
        let s = spec("cone:1");
        let d = quotient_denoise(&s, &f, int(2)).unwrap();
        assert!(d.certified);
        assert_eq!(d.module.dims(), &[2, 1, 1, 1, 1]);
        let d = quotient_denoise(&s, &f, int(3)).unwrap();
        assert_eq!(d.module.dims(), &[1, 1, 1, 1, 1]);
        let seq = denoising_betti_sequence(&s, &f, &[int(0), int(1), int(2), int(3)], Mode::Quotient, Engine::Exhaustive).unwrap();
        let sizes: Vec<usize> = seq.iter().map(|b| b.values().sum()).collect();
        assert_eq!(sizes, [4, 4, 2, 1]);
    }

    #[test]
    fn mono_square_quotient_is_not_certified() {
        let d = quotient_denoise(&spec("cone:1,1"), &catalog::mono_square(), int(2)).unwrap();
        assert_eq!(d.rank(), 2);
        assert!(!d.certified);
    }

    #[test]
    fn staircase_subfunctor() {
        let f = catalog::staircase();
        let d = subfunctor_denoise(&spec("cone:1,1"), &f, int(2), Engine::Exhaustive).unwrap();
        assert!(d.certified);
        assert_eq!(rank(&d.module), 2);
        let expect = span_submodule(&f, &[(vec![1, 3], vec![1]), (vec![3, 1], vec![1])]).unwrap();
        assert_eq!(d.witness, expect);
    }

    #[test]
    fn two_minimizers_subfunctor() {
        let f = catalog::two_minimizers();
        let s = spec("cone:1,1");
        let valid = |gens: &[(Vec<usize>, Vec<u32>)]| {
            let sub = span_submodule(&f, gens).unwrap();
            let (q, _) = sub.quotient();
            (sub.rank(), noise_size(&s, &q).unwrap().below(int(2)))
        };
        let g1p_g3 = [(vec![1, 3], vec![1]), (vec![3, 1], vec![1])];
        let g2_g4p = [(vec![1, 2], vec![1]), (vec![5, 1], vec![1])];
        let pushed = [(vec![1, 3], vec![1]), (vec![4, 1], vec![1])];
        assert_eq!(valid(&g1p_g3), (2, true));
        assert_eq!(valid(&g2_g4p), (2, true));
        // g3 can be pushed one step right, so the first one is not minimal
        assert_eq!(valid(&pushed), (2, true));
        let d = subfunctor_denoise(&s, &f, int(2), Engine::GeneratorOrbit).unwrap();
        let a = span_submodule(&f, &g2_g4p).unwrap();
        let b = span_submodule(&f, &pushed).unwrap();
        assert!(d.witness == a || d.witness == b, "{:?}", d.witness.generators());
    }
}

#[test]
fn diagonal_kills_union_of_axes() {
    let g = catalog::union_of_axes();
    assert!(pnoise_core::noise::contains(&spec("cone:1,1"), &g, int(1)).unwrap());
    assert!(!pnoise_core::noise::contains(&spec("cone:1,1"), &g, rat(1, 2)).unwrap());
}

#[test]
fn three_generators_bar_by_orbit() {
    let f = catalog::three_generators();
    let out = bar_search(&spec("cone:1,1,1"), &f, &[], Engine::GeneratorOrbit).unwrap();
    let expect = steps(&[(StepStart::Closed(int(0)), 3), (StepStart::Open(int(1)), 1), (StepStart::Open(int(2)), 0)]);
    assert_eq!(out.function, expect);
    assert!(!out.is_exact());
}
