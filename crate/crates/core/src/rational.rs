//! Exact rational vectors and decimal parsing.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::CohomologyClass;

pub type RationalVector = Vec<BigRational>;

pub fn from_integers(v: &[i64]) -> RationalVector {
    v.iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect()
}

pub fn from_class(w: &CohomologyClass) -> RationalVector {
    from_integers(w.coords())
}

/// Parses `"3"`, `"-2/5"` or a decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::BadDecimal(s.to_string()))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::BadDecimal(s.to_string()))?;
            if d.is_zero() {
                return Err(Error::BadDecimal(s.to_string()));
            }
            Ok(BigRational::new(n, d))
        }
        None => parse_decimal(s),
    }
}

/// Exact value of a decimal string like `"5.3334895669"` or `"-12"`.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::BadDecimal(s.to_string());
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let mut digits = alloc::string::String::with_capacity(int_part.len() + frac_part.len());
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(num, den);
    Ok(if neg { -value } else { value })
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn dot(a: &[BigRational], b: &[i64]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, &y)| x * BigInt::from(y))
        .fold(BigRational::zero(), |acc, t| acc + t)
}

pub fn scale(v: &[BigRational], r: &BigRational) -> RationalVector {
    v.iter().map(|x| x * r).collect()
}

/// The primitive integral class on the ray through a nonzero rational vector.
pub fn primitive_on_ray(v: &[BigRational]) -> Result<CohomologyClass> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroClass);
    }
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    ints.iter()
        .map(|x| {
            (x / &g)
                .to_i64()
                .ok_or(Error::Overflow("reducing a ray to its primitive class"))
        })
        .collect::<Result<Vec<_>>>()
        .map(CohomologyClass::new)
}
