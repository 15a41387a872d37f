//! Rational scalars and points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Point = Vec<Rational>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn point(coords: &[i64]) -> Point {
    coords.iter().map(|&c| int(c)).collect()
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, digits)) = t.split_once('.') {
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_abs = whole.trim_start_matches(['-', '+']);
        let w: BigInt = if whole_abs.is_empty() { BigInt::zero() } else { whole_abs.parse().map_err(|_| bad())? };
        let f: BigInt = digits.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(digits.len() as u32);
        let mag = Rational::new(w * &scale + f, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn l1_norm(a: &[Rational]) -> Rational {
    a.iter().fold(Rational::zero(), |acc, x| acc + x.abs())
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Point {
    a.iter().map(|x| x * s).collect()
}

/// Arithmetic mean of a non-empty list of points.
pub fn centroid(points: &[Point]) -> Point {
    assert!(!points.is_empty(), "centroid of no points");
    let d = points[0].len();
    let mut acc = vec![Rational::zero(); d];
    for p in points {
        for (s, x) in acc.iter_mut().zip(p) {
            *s += x;
        }
    }
    let k = int(points.len() as i64);
    acc.into_iter().map(|s| s / &k).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn one() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/4").unwrap(), frac(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), frac(-3, 4));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("-0.25").unwrap(), frac(-1, 4));
        assert_eq!(parse_rational("1.5").unwrap(), frac(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&frac(6, 3)), "2");
        assert_eq!(format_rational(&frac(-1, 2)), "-1/2");
    }

    #[test]
    fn vector_helpers() {
        let a = point(&[1, -2, 3]);
        assert_eq!(l1_norm(&a), int(6));
        assert_eq!(dot(&a, &point(&[1, 1, 1])), int(2));
        assert_eq!(centroid(&[point(&[0, 0]), point(&[2, 4])]), point(&[1, 2]));
    }
}
