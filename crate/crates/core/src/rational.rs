//! Exact rational helpers on top of [`num_rational::BigRational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_u64(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a/b"` or `"a"`; the denominator must be nonzero.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// `q / g` as an integer, or `None` if `g` is zero or the quotient is fractional.
pub fn integer_quotient(q: &Rational, g: &Rational) -> Option<BigInt> {
    if g.is_zero() {
        return None;
    }
    let r = q / g;
    r.is_integer().then(|| r.to_integer())
}

/// Generator of the intersection `aℤ ∩ bℤ` of two rational lattices.
pub fn lcm(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    let (a, b) = (a.abs(), b.abs());
    Rational::new(a.numer().lcm(b.numer()), a.denom().gcd(b.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        assert_eq!(parse_rational("4/6"), Some(rat(2, 3)));
        assert_eq!(parse_rational("-5"), Some(int(-5)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn lattice_lcm() {
        assert_eq!(lcm(&rat(4, 9), &rat(2, 3)), rat(4, 3));
        assert_eq!(lcm(&int(4), &int(6)), int(12));
        assert!(lcm(&int(0), &int(6)).is_zero());
    }

    #[test]
    fn quotient() {
        assert_eq!(integer_quotient(&rat(4, 3), &rat(2, 3)), Some(BigInt::from(2)));
        assert_eq!(integer_quotient(&rat(4, 9), &rat(2, 3)), None);
        assert_eq!(integer_quotient(&int(1), &int(0)), None);
    }
}
