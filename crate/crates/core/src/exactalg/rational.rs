use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

/// Exact rational with reduced numerator and positive denominator.
pub type Rational = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Greatest rational `g` such that both `a/g` and `b/g` are integers.
pub fn rational_gcd(a: Rational, b: Rational) -> Rational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let n = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    Rational::new(n, a.denom() * b.denom())
}

/// Floor of `x / y` for positive `y`.
pub fn floor_div(x: Rational, y: Rational) -> i64 {
    (x / y).floor().to_integer()
}

pub fn ceil_div(x: Rational, y: Rational) -> i64 {
    (x / y).ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_rationals() {
        assert_eq!(rational_gcd(rat(1, 2), rat(1, 3)), rat(1, 6));
        assert_eq!(rational_gcd(int(2), rat(3, 2)), rat(1, 2));
        assert_eq!(floor_div(rat(7, 2), int(1)), 3);
        assert_eq!(floor_div(rat(-1, 2), int(1)), -1);
    }
}
