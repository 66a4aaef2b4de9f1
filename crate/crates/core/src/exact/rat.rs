//! Arbitrary-precision rationals.
//!
//! [`Rat`] is `num_rational::BigRational`, which already keeps values in lowest
//! terms with a positive denominator. This module adds the handful of helpers
//! the rest of the crate needs: construction shortcuts, the `"p/q"` text form
//! used by the JSON interfaces, and Pochhammer symbols.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rat = BigRational;

/// `p/q` as a [`Rat`]. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rint(p: i64) -> Rat {
    BigRational::from_integer(BigInt::from(p))
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// The value as an `i64` if it is an integer that fits.
pub fn to_i64(x: &Rat) -> Option<i64> {
    if !is_integer(x) {
        return None;
    }
    i64::try_from(x.numer()).ok()
}

/// Formats as `"p/q"`, or `"p"` when the denominator is 1.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p/q"`, `"p"`, or a plain decimal such as `"0.25"`.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let digits = format!("{ip_abs}{fp}");
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let v = BigRational::new(num, den);
        return Ok(if neg { -v } else { v });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`; `(x)_0 = 1`.
pub fn pochhammer(x: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    let mut cur = x.clone();
    for _ in 0..k {
        acc *= &cur;
        cur += Rat::one();
    }
    acc
}

/// `(a)_n` for any integer `n`, using `(a)_n = Gamma(a+n)/Gamma(a)`.
/// For `n < 0` this is `1 / ((a+n)(a+n+1)...(a-1))`; `None` if that product vanishes.
pub fn pochhammer_signed(a: &Rat, n: i64) -> Option<Rat> {
    if n >= 0 {
        return Some(pochhammer(a, n as usize));
    }
    let m = (-n) as usize;
    let start = a - rint(m as i64);
    let den = pochhammer(&start, m);
    if den.is_zero() {
        None
    } else {
        Some(den.recip())
    }
}

pub fn factorial(k: usize) -> Rat {
    pochhammer(&Rat::one(), k)
}

pub fn binomial(n: usize, k: usize) -> Rat {
    if k > n {
        return Rat::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(-1)^e` as a rational.
pub fn sign_pow(e: i64) -> Rat {
    if e.is_even() {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// `|x|` rounded up to an integer.
pub fn ceil_abs(x: &Rat) -> BigInt {
    let a = x.abs();
    a.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(7, 3), 0), Rat::one());
        assert_eq!(pochhammer(&rint(1), 4), rint(24));
        assert_eq!(pochhammer(&rint(-3), 5), Rat::zero());
    }

    #[test]
    fn signed_pochhammer_negative_index() {
        // (a)_{-1} = 1/(a-1)
        let a = rat(1, 3);
        assert_eq!(pochhammer_signed(&a, -1), Some((a.clone() - rint(1)).recip()));
        assert_eq!(pochhammer_signed(&rint(1), -1), None);
        // (a)_n (a+n)_{-n} = 1
        let n = 4;
        let lhs = pochhammer_signed(&a, n).unwrap()
            * pochhammer_signed(&(a.clone() + rint(n)), -n).unwrap();
        assert_eq!(lhs, Rat::one());
    }

    #[test]
    fn text_form() {
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("5").unwrap(), rint(5));
        assert_eq!(parse_rat("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(fmt_rat(&rat(2, 6)), "1/3");
        assert_eq!(fmt_rat(&rint(-7)), "-7");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
