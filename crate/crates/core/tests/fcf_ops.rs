use pnoise_core::catalog;
use pnoise_core::exactalg::{int, rat, PrimeField};
use pnoise_core::fcf::{closeness_upper_bound, equivalence_budget, is_interleaved};
use pnoise_core::gridmod::{Bar, GridModule};
use pnoise_core::noise::{NoiseSize, NoiseSpec};
use pnoise_core::structure::{span_submodule, NatMap};

fn spec(s: &str) -> NoiseSpec {
    s.parse().unwrap()
}

fn bar1(n: usize, s: usize, e: Option<usize>) -> GridModule {
    GridModule::bar(PrimeField::f2(), 1, int(1), n, &Bar { start: vec![s], end: e.map(|e| vec![e]) }).unwrap()
}

#[test]
fn budget_of_isomorphism_is_zero() {
    let f = catalog::mono_square();
    let b = equivalence_budget(&spec("cone:1,1"), &NatMap::identity(&f)).unwrap();
    assert_eq!((b.tau, b.mu), (NoiseSize::zero(), NoiseSize::zero()));
}

#[test]
fn budget_of_free_inclusion() {
    let big = bar1(5, 1, None);
    let small = span_submodule(&big, &[(vec![4], vec![1])]).unwrap();
    let (_, incl) = small.to_module();
    let b = equivalence_budget(&spec("cone:1"), &incl).unwrap();
    assert_eq!(b.tau, NoiseSize::zero());
    assert_eq!(b.mu, NoiseSize::Attained(int(3)));
}

#[test]
fn plane_element_budget() {
    let f = catalog::plane_combination();
    let sub = span_submodule(&f, &[catalog::plane_combination_element()]).unwrap();
    let (_, incl) = sub.to_module();
    let b = equivalence_budget(&spec("cone:1,1"), &incl).unwrap();
    assert!(b.is_equivalence(int(1)));
}

#[test]
fn closeness_bounds() {
    let s = spec("cone:1,1");
    let f = catalog::mono_square();
    assert_eq!(closeness_upper_bound(&s, &f, &f).unwrap().bound, NoiseSize::zero());
    let free = GridModule::free(PrimeField::f2(), 2, int(1), 2, &[1, 1]).unwrap();
    let c = closeness_upper_bound(&s, &f, &free).unwrap();
    assert!(c.bound.admits(int(2)), "{}", c.bound);
    let b = GridModule::bar(PrimeField::f2(), 2, int(1), 2, &Bar { start: vec![0, 0], end: Some(vec![1, 1]) }).unwrap();
    let fb = f.direct_sum(&b).unwrap();
    assert!(closeness_upper_bound(&s, &f, &fb).unwrap().bound.admits(int(1)));
}

#[test]
fn interleaving_of_bars() {
    let short = bar1(3, 0, Some(1));
    let long = bar1(3, 0, Some(3));
    assert!(!is_interleaved(&short, &long, &[int(1)]).unwrap());
    assert!(!is_interleaved(&short, &long, &[rat(1, 2)]).unwrap());
    assert!(is_interleaved(&short, &long, &[rat(3, 2)]).unwrap());
    assert!(is_interleaved(&long, &long, &[int(0)]).unwrap());
}

#[test]
fn interleaving_with_zero() {
    let f = bar1(4, 0, Some(2));
    let z = GridModule::zero(PrimeField::f2(), 1, int(1), 4);
    assert!(is_interleaved(&f, &z, &[int(1)]).unwrap());
    assert!(!is_interleaved(&f, &z, &[rat(1, 2)]).unwrap());
}
