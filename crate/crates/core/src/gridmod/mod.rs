//! Finitely presented, alpha-tame modules stored on a finite lattice box.

mod grid;
mod module;

pub use grid::{leq, Grid, GridPoint};
pub use module::{Bar, GridError, GridModule, RationalPoint};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat, Matrix, PrimeField};
    use alloc::vec;

    fn k2() -> PrimeField {
        PrimeField::f2()
    }

    #[test]
    fn bar_support_and_maps() {
        let b = GridModule::bar(k2(), 2, int(1), 3, &Bar { start: vec![1, 0], end: Some(vec![2, 2]) }).unwrap();
        assert_eq!(b.dim(&[0, 0]), 0);
        assert_eq!(b.dim(&[1, 0]), 1);
        assert_eq!(b.dim(&[3, 1]), 1);
        assert_eq!(b.dim(&[2, 2]), 0);
        assert_eq!(b.evaluate_map(&[1, 0], &[3, 1]).unwrap(), Matrix::identity(k2(), 1));
        assert!(b.evaluate_map(&[1, 0], &[2, 2]).unwrap().is_zero());
        assert_eq!(b.evaluate_map(&[1, 1], &[0, 2]), Err(GridError::NotComparable));
    }

    #[test]
    fn clipping_beyond_the_box() {
        let f = GridModule::free(k2(), 1, int(1), 2, &[1]).unwrap();
        assert_eq!(f.dim(&[7]), 1);
        assert_eq!(f.evaluate_map(&[2], &[9]).unwrap(), Matrix::identity(k2(), 1));
        let (anchor, d) = f.evaluate_rational(&[rat(5, 2)]).unwrap();
        assert_eq!((anchor, d), (vec![2], 1));
        assert_eq!(f.evaluate_rational(&[rat(1, 2)]).unwrap().1, 0);
    }

    #[test]
    fn translate_by_half() {
        let f = GridModule::bar(k2(), 1, int(1), 1, &Bar { start: vec![0], end: Some(vec![1]) }).unwrap();
        let g = f.translate(&[rat(1, 2)]).unwrap();
        assert_eq!(g.alpha(), rat(1, 2));
        for (x, d) in [(rat(0, 1), 1), (rat(1, 4), 1), (rat(1, 2), 0), (int(3), 0)] {
            assert_eq!(g.evaluate_rational(&[x]).unwrap().1, d, "at {x}");
        }
    }

    #[test]
    fn rescale_keeps_the_functor() {
        let f = GridModule::bar(k2(), 2, int(1), 2, &Bar { start: vec![0, 1], end: Some(vec![1, 2]) }).unwrap();
        let g = f.rescale(3);
        assert_eq!(g.size(), 6);
        for a in 0..9 {
            for b in 0..9 {
                let q = [rat(a, 3), rat(b, 3)];
                assert_eq!(f.evaluate_rational(&q).unwrap().1, g.evaluate_rational(&q).unwrap().1);
            }
        }
        g.validate().unwrap();
    }

    #[test]
    fn direct_sum_dims_add() {
        let a = GridModule::free(k2(), 2, int(1), 2, &[0, 1]).unwrap();
        let b = GridModule::free(k2(), 2, int(1), 2, &[1, 0]).unwrap();
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.dim(&[1, 1]), 2);
        assert_eq!(s.dim(&[0, 0]), 0);
        s.validate().unwrap();
    }

    #[test]
    fn non_commuting_square_is_reported() {
        let k = k2();
        let m = GridModule::from_fn(k, 2, int(1), 1, |_| 1, |v, axis| {
            if v == [0, 0] && axis == 0 {
                Matrix::zeros(k, 1, 1)
            } else {
                Matrix::identity(k, 1)
            }
        })
        .unwrap();
        assert!(matches!(m.validate(), Err(GridError::NonCommuting { .. })));
    }
}
