use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `["num", "den"]` with decimal strings.
pub fn to_pair(q: &Rational) -> [String; 2] {
    [q.numer().to_string(), q.denom().to_string()]
}

pub fn from_pair(num: &str, den: &str) -> Result<Rational> {
    let n: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad integer {num:?}")))?;
    let d: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad integer {den:?}")))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

pub fn lcm_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// `c` with `c^d = q` if one exists in Q.
pub fn rational_root(q: &Rational, d: u32) -> Option<Rational> {
    if d == 0 {
        return None;
    }
    if q.is_negative() && d.is_multiple_of(2) {
        return None;
    }
    let root = |x: &BigInt| -> Option<BigInt> {
        let r = x.abs().nth_root(d);
        (num_traits::pow(r.clone(), d as usize) == x.abs()).then_some(if x.is_negative() { -r } else { r })
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}
