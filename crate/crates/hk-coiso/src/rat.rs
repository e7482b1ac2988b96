//! Exact rational scalars and their `"p/q"` string form.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::Error;

/// Scalar type used everywhere in this crate. Floats are never used.
pub type Rat = BigRational;

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` (arbitrary-precision, sign allowed on the numerator).
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::BadRational(s.to_string()))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::BadRational(s.to_string()))?;
    if den.is_zero() {
        return Err(Error::BadRational(s.to_string()));
    }
    Ok(Rat::new(num, den))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise, with q > 0.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denom_lcm(values: &[Rat]) -> BigInt {
    let mut lcm = BigInt::one();
    for v in values {
        lcm = num::integer::lcm(lcm, v.denom().abs());
    }
    lcm
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-7", "3/4", "-22/7", "100000000000000000000/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        // non-canonical inputs normalize
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert_eq!(format_rat(&parse_rat("2/-4").unwrap()), "-1/2");
        assert_eq!(format_rat(&parse_rat(" 1 / 3 ").unwrap()), "1/3");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "a/b", "1.5", "1/2/3"] {
            assert!(parse_rat(s).is_err(), "{s:?} should not parse");
        }
    }

    #[test]
    fn denom_lcm_of_mixed() {
        let vals = [rat_frac(1, 6), rat_frac(-3, 4), rat_int(2)];
        assert_eq!(denom_lcm(&vals), BigInt::from(12));
    }
}
