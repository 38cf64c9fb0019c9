//! Interval decomposition of one-parameter modules.

use alloc::vec;
use alloc::vec::Vec;

use crate::exactalg::{PrimeField, Rational};
use crate::gridmod::{Bar, GridError, GridModule, GridPoint};
use crate::structure::{kernel, minimal_cover};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BarcodeError {
    #[error("barcodes exist only for one-parameter modules, got r = {0}")]
    NotOneParameter(usize),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Multiset of finite bars `[start, end)` and free summands `[start, inf)`
/// in lattice units of `alpha`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Barcode {
    pub alpha: Rational,
    pub bars: Vec<Bar>,
    pub frees: Vec<GridPoint>,
}

impl Barcode {
    pub fn new(alpha: Rational, mut bars: Vec<Bar>, mut frees: Vec<GridPoint>) -> Self {
        bars.sort();
        frees.sort();
        Barcode { alpha, bars, frees }
    }

    pub fn len(&self) -> usize {
        self.bars.len() + self.frees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(start, Some(end))` pairs and `(start, None)` for free summands.
    pub fn intervals(&self) -> Vec<(usize, Option<usize>)> {
        let mut out: Vec<(usize, Option<usize>)> = self
            .bars
            .iter()
            .map(|b| (b.start[0], b.end.as_ref().map(|e| e[0])))
            .chain(self.frees.iter().map(|v| (v[0], None)))
            .collect();
        out.sort_by_key(|&(s, e)| (s, e.map_or(usize::MAX, |x| x)));
        out
    }
}

/// Barcode of a module with `r = 1`, by reducing the relation matrix of a
/// minimal presentation with the elder rule.
pub fn decompose(f: &GridModule) -> Result<Barcode, BarcodeError> {
    if f.r() != 1 {
        return Err(BarcodeError::NotOneParameter(f.r()));
    }
    let k = f.field();
    let cover = minimal_cover(f);
    let births: Vec<usize> = cover.generators.iter().map(|(v, _)| v[0]).collect();
    let ngen = births.len();
    // relations as full-length columns over the generators; the basis of the
    // cover at grade d is the prefix of generators born by d
    let mut cols: Vec<(usize, Vec<u32>)> = kernel(&cover.map)
        .generators()
        .into_iter()
        .map(|(d, x)| {
            let mut c = vec![0u32; ngen];
            c[..x.len()].copy_from_slice(&x);
            (d[0], c)
        })
        .collect();
    cols.sort_by_key(|(d, _)| *d);
    let mut owner: Vec<Option<usize>> = vec![None; ngen];
    let mut deaths: Vec<Option<usize>> = vec![None; ngen];
    for c in 0..cols.len() {
        loop {
            let Some(piv) = cols[c].1.iter().rposition(|&x| x != 0) else { break };
            match owner[piv] {
                None => {
                    owner[piv] = Some(c);
                    deaths[piv] = Some(cols[c].0);
                    break;
                }
                Some(o) => {
                    let factor = k.mul(cols[c].1[piv], k.inv(cols[o].1[piv]));
                    let other = cols[o].1.clone();
                    for (x, y) in cols[c].1.iter_mut().zip(&other) {
                        *x = k.sub(*x, k.mul(factor, *y));
                    }
                }
            }
        }
    }
    let mut bars = Vec::new();
    let mut frees = Vec::new();
    for (j, &b) in births.iter().enumerate() {
        match deaths[j] {
            Some(d) if d > b => bars.push(Bar { start: vec![b], end: Some(vec![d]) }),
            Some(_) => {}
            None => frees.push(vec![b]),
        }
    }
    Ok(Barcode::new(f.alpha(), bars, frees))
}

/// Direct sum of the interval modules of a barcode on the box `{0..n}`.
pub fn reconstruct(b: &Barcode, field: PrimeField, n: usize) -> Result<GridModule, BarcodeError> {
    let mut acc = GridModule::zero(field, 1, b.alpha, n);
    for bar in &b.bars {
        acc = acc.direct_sum(&GridModule::bar(field, 1, b.alpha, n, bar)?)?;
    }
    for v in &b.frees {
        acc = acc.direct_sum(&GridModule::free(field, 1, b.alpha, n, v)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, Matrix};

    #[test]
    fn single_bar_roundtrip() {
        let k = PrimeField::f2();
        let bar = Bar { start: vec![1], end: Some(vec![3]) };
        let m = GridModule::bar(k, 1, int(1), 4, &bar).unwrap();
        let b = decompose(&m).unwrap();
        assert_eq!(b.bars, vec![bar]);
        assert!(b.frees.is_empty());
        assert_eq!(reconstruct(&b, k, 4).unwrap(), m);
    }

    #[test]
    fn elder_rule_merge() {
        // two generators at 0 and 1 merged at 2
        let k = PrimeField::f2();
        let m = GridModule::from_fn(
            k,
            1,
            int(1),
            3,
            |v| [1, 2, 1, 1][v[0]],
            |v, _| match v[0] {
                0 => Matrix::from_rows(k, 1, &[&[1], &[0]]),
                1 => Matrix::from_rows(k, 2, &[&[1, 1]]),
                _ => Matrix::identity(k, 1),
            },
        )
        .unwrap();
        let b = decompose(&m).unwrap();
        assert_eq!(b.intervals(), vec![(0, None), (1, Some(2))]);
    }

    #[test]
    fn rejects_higher_r() {
        let m = GridModule::zero(PrimeField::f2(), 2, int(1), 1);
        assert_eq!(decompose(&m), Err(BarcodeError::NotOneParameter(2)));
    }
}
