use alloc::vec::Vec;

use num_integer::Integer;

use super::rational::Rational;

/// `sum coeffs[i] x_i + constant >= 0` (or `> 0` when strict), scaled to
/// coprime integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Row {
    coeffs: Vec<i128>,
    constant: i128,
    strict: bool,
}

impl Row {
    fn from_rational(coeffs: &[Rational], constant: Rational, strict: bool) -> Row {
        let mut l: i128 = constant.denom().unsigned_abs() as i128;
        for c in coeffs {
            l = l.lcm(&(c.denom().unsigned_abs() as i128));
        }
        let scale = |q: &Rational| -> i128 { *q.numer() as i128 * (l / *q.denom() as i128) };
        let mut row = Row { coeffs: coeffs.iter().map(scale).collect(), constant: scale(&constant), strict };
        row.normalize();
        row
    }

    fn normalize(&mut self) {
        let mut g = self.constant.abs();
        for &c in &self.coeffs {
            g = g.gcd(&c);
        }
        if g > 1 {
            for c in &mut self.coeffs {
                *c /= g;
            }
            self.constant /= g;
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    fn holds_trivially(&self) -> bool {
        if self.strict {
            self.constant > 0
        } else {
            self.constant >= 0
        }
    }
}

/// `sum coeffs[i] x_i + constant >= 0`, or `> 0` when `strict`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
    pub strict: bool,
}

impl Inequality {
    /// The complementary half-space.
    pub fn negated(&self) -> Inequality {
        Inequality {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: -self.constant,
            strict: !self.strict,
        }
    }
}

/// A bound `value` on a single variable; `strict` marks an open endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub value: Rational,
    pub strict: bool,
}

/// Feasible range of one variable after projecting out all others.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
}

/// A conjunction of linear inequalities, some strict, solved exactly by
/// Fourier-Motzkin elimination.
#[derive(Clone, Debug)]
pub struct System {
    nvars: usize,
    rows: Vec<Row>,
    infeasible: bool,
}

impl System {
    pub fn new(nvars: usize) -> Self {
        System { nvars, rows: Vec::new(), infeasible: false }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn push(&mut self, row: Row) {
        if row.is_trivial() {
            if !row.holds_trivially() {
                self.infeasible = true;
            }
            return;
        }
        self.rows.push(row);
    }

    /// `sum a_i x_i + c >= 0`
    pub fn ge(&mut self, coeffs: &[Rational], constant: Rational) {
        assert_eq!(coeffs.len(), self.nvars);
        self.push(Row::from_rational(coeffs, constant, false));
    }

    /// `sum a_i x_i + c > 0`
    pub fn gt(&mut self, coeffs: &[Rational], constant: Rational) {
        assert_eq!(coeffs.len(), self.nvars);
        self.push(Row::from_rational(coeffs, constant, true));
    }

    /// `sum a_i x_i + c = 0`
    pub fn eq(&mut self, coeffs: &[Rational], constant: Rational) {
        self.ge(coeffs, constant);
        let neg: Vec<Rational> = coeffs.iter().map(|c| -c).collect();
        self.ge(&neg, -constant);
    }

    fn simplify(&mut self) {
        self.rows.sort();
        self.rows.dedup();
        // among rows with identical coefficients keep the tightest
        let mut out: Vec<Row> = Vec::with_capacity(self.rows.len());
        for r in self.rows.drain(..) {
            if let Some(last) = out.last_mut() {
                if last.coeffs == r.coeffs {
                    let tighter = r.constant < last.constant || (r.constant == last.constant && r.strict);
                    if tighter {
                        *last = r;
                    }
                    continue;
                }
            }
            out.push(r);
        }
        self.rows = out;
    }

    /// Removes variable `var` (its coefficient becomes zero everywhere).
    pub fn eliminate(&mut self, var: usize) {
        if self.infeasible {
            return;
        }
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in self.rows.drain(..) {
            match r.coeffs[var].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => rest.push(r),
            }
        }
        self.rows = rest;
        for p in &pos {
            for n in &neg {
                let a = p.coeffs[var];
                let b = -n.coeffs[var];
                let mut row = Row {
                    coeffs: p.coeffs.iter().zip(&n.coeffs).map(|(x, y)| b * x + a * y).collect(),
                    constant: b * p.constant + a * n.constant,
                    strict: p.strict || n.strict,
                };
                row.coeffs[var] = 0;
                row.normalize();
                self.push(row);
            }
        }
        self.simplify();
    }

    pub fn add(&mut self, ineq: &Inequality) {
        assert_eq!(ineq.coeffs.len(), self.nvars);
        self.push(Row::from_rational(&ineq.coeffs, ineq.constant, ineq.strict));
    }

    /// Inequalities describing the projection onto the variables flagged in
    /// `keep` (other coefficients are zero), or `None` if the system is
    /// infeasible.
    pub fn project(&self, keep: &[bool]) -> Option<Vec<Inequality>> {
        let mut s = self.clone();
        for v in 0..s.nvars {
            if !keep[v] {
                s.eliminate(v);
            }
        }
        if s.infeasible || !s.is_feasible() {
            return None;
        }
        let q = |x: i128| Rational::from_integer(i64::try_from(x).expect("coefficient fits in i64"));
        Some(
            s.rows
                .iter()
                .map(|r| Inequality {
                    coeffs: r.coeffs.iter().map(|&c| q(c)).collect(),
                    constant: q(r.constant),
                    strict: r.strict,
                })
                .collect(),
        )
    }

    pub fn is_feasible(&self) -> bool {
        let mut s = self.clone();
        for v in 0..s.nvars {
            s.eliminate(v);
        }
        !s.infeasible
    }

    /// Exact range of `var` over the feasible set, or `None` if empty.
    pub fn project_onto(&self, var: usize) -> Option<Interval> {
        let mut s = self.clone();
        for v in 0..s.nvars {
            if v != var {
                s.eliminate(v);
            }
        }
        if s.infeasible {
            return None;
        }
        let mut lower: Option<Bound> = None;
        let mut upper: Option<Bound> = None;
        for r in &s.rows {
            let a = r.coeffs[var];
            let val = Rational::new(
                i64::try_from(-r.constant).expect("bound fits in i64"),
                i64::try_from(a).expect("bound fits in i64"),
            );
            if a > 0 {
                let b = Bound { value: val, strict: r.strict };
                lower = Some(match lower {
                    Some(l) if l.value > val || (l.value == val && l.strict) => l,
                    _ => b,
                });
            } else {
                let b = Bound { value: val, strict: r.strict };
                upper = Some(match upper {
                    Some(u) if u.value < val || (u.value == val && u.strict) => u,
                    _ => b,
                });
            }
        }
        if let (Some(l), Some(u)) = (lower, upper) {
            if l.value > u.value || (l.value == u.value && (l.strict || u.strict)) {
                return None;
            }
        }
        Some(Interval { lower, upper })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    #[test]
    fn projection_with_strict_bounds() {
        // x + y >= 1, x < 2, y <= 1/2, y >= 0
        let mut s = System::new(2);
        s.ge(&[int(1), int(1)], int(-1));
        s.gt(&[int(-1), int(0)], int(2));
        s.ge(&[int(0), int(-1)], rat(1, 2));
        s.ge(&[int(0), int(1)], int(0));
        let i = s.project_onto(0).unwrap();
        assert_eq!(i.lower, Some(Bound { value: rat(1, 2), strict: false }));
        assert_eq!(i.upper, Some(Bound { value: int(2), strict: true }));
    }

    #[test]
    fn strict_contradiction() {
        let mut s = System::new(1);
        s.gt(&[int(1)], int(-1));
        s.ge(&[int(-1)], int(1));
        assert!(!s.is_feasible());
        assert!(s.project_onto(0).is_none());
    }
}
