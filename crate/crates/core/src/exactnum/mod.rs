//! Exact and rigorously enclosed real arithmetic.
//!
//! Every comparison made by the lexicographic and automaton algorithms goes
//! through [`compare`], which either certifies an ordering or reports
//! [`Cmp::Undecided`] at the requested precision.

pub mod algebraic;
pub mod field;
pub mod poly;
pub mod series;

pub use algebraic::AlgebraicReal;
pub use field::{eval_poly_in_alpha, AlgebraicField, QAlpha};
pub use series::SeriesReal;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

pub type Rational = num_rational::BigRational;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `2^-k`.
pub fn pow2_neg(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

/// Default precision for comparisons that may be undecidable.
pub fn default_precision() -> Rational {
    pow2_neg(128)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let sn = r.numer().bits().saturating_sub(64);
    let sd = r.denom().bits().saturating_sub(64);
    let n = (r.numer() >> sn).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> sd).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi(sn as i32 - sd as i32)
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.45` or `1e-6`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        let d = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("{s}: zero denominator")));
        }
        return Ok(Rational::new(n, d));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| Error::Parse(format!("bad exponent in {s}")))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(format!("empty number '{s}'")));
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a number: '{s}'")));
    }
    let mut v = Rational::from_integer(BigInt::from_str(&digits).unwrap());
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    if scale >= 0 {
        v *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        v /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -v } else { v })
}

/// A real number: exact rational, algebraic root, or enclosed series value.
#[derive(Clone)]
pub enum RealNumber {
    Rational(Rational),
    Algebraic(AlgebraicReal),
    Series(SeriesReal),
}

/// Result of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Cmp {
    Less,
    Equal,
    Greater,
    Undecided,
}

impl From<Ordering> for Cmp {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Cmp::Less,
            Ordering::Equal => Cmp::Equal,
            Ordering::Greater => Cmp::Greater,
        }
    }
}

impl RealNumber {
    pub fn rational(n: i64, d: i64) -> Self {
        RealNumber::Rational(q(n, d))
    }

    pub fn alpha_kl() -> Self {
        RealNumber::Series(crate::thuemorse::alpha_kl_series())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            RealNumber::Rational(r) => Some(r.clone()),
            RealNumber::Algebraic(a) => a.as_rational(),
            RealNumber::Series(_) => None,
        }
    }

    /// Interval containing the value, of width at most `width`.
    pub fn refine(&self, width: &Rational) -> Result<(Rational, Rational)> {
        match self {
            RealNumber::Rational(r) => Ok((r.clone(), r.clone())),
            RealNumber::Algebraic(a) => a.refine(width),
            RealNumber::Series(s) => s.refine(width),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealNumber::Rational(r) => rational_to_f64(r),
            RealNumber::Algebraic(a) => a.to_f64(),
            RealNumber::Series(s) => s.to_f64(),
        }
    }

    pub fn is_alpha_kl(&self) -> bool {
        matches!(self, RealNumber::Series(s) if s.known() == Some(series::KnownConstant::AlphaKl))
    }
}

/// Certified comparison; `Undecided` only when a series value is involved and
/// the two numbers could not be separated at `precision`.
pub fn compare(a: &RealNumber, b: &RealNumber, precision: &Rational) -> Cmp {
    use RealNumber::*;
    match (a, b) {
        (Rational(x), Rational(y)) => x.cmp(y).into(),
        (Algebraic(x), Rational(y)) => x.cmp_rational(y).into(),
        (Rational(x), Algebraic(y)) => y.cmp_rational(x).reverse().into(),
        (Algebraic(x), Algebraic(y)) => x.cmp_algebraic(y).into(),
        _ => compare_by_enclosure(a, b, precision),
    }
}

fn compare_by_enclosure(a: &RealNumber, b: &RealNumber, precision: &Rational) -> Cmp {
    if !precision.is_positive() {
        return Cmp::Undecided;
    }
    let mut w = q(1, 4);
    loop {
        let (Ok((alo, ahi)), Ok((blo, bhi))) = (a.refine(&w), b.refine(&w)) else {
            return Cmp::Undecided;
        };
        if ahi < blo {
            return Cmp::Less;
        }
        if bhi < alo {
            return Cmp::Greater;
        }
        if &w < precision {
            return Cmp::Undecided;
        }
        w /= Rational::from_integer(BigInt::from(1u32 << 8));
    }
}

impl fmt::Display for RealNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealNumber::Rational(r) => write!(f, "rat:{}", format_rational(r)),
            RealNumber::Algebraic(a) => write!(f, "{a}"),
            RealNumber::Series(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Debug for RealNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for RealNumber {
    type Err = Error;

    /// Accepts `rat:p/q` (or a decimal), `alg:c0,c1,...,ck@[lo,hi]`, and `akl`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "akl" {
            return Ok(RealNumber::alpha_kl());
        }
        if let Some(body) = s.strip_prefix("rat:") {
            return Ok(RealNumber::Rational(parse_rational(body)?));
        }
        if let Some(body) = s.strip_prefix("alg:") {
            let (cs, iv) = body
                .split_once('@')
                .ok_or_else(|| Error::Parse(format!("expected '@[lo,hi]' in '{s}'")))?;
            let coeffs = cs
                .split(',')
                .map(|c| BigInt::from_str(c.trim()).map_err(|_| Error::Parse(format!("bad coefficient '{c}'"))))
                .collect::<Result<Vec<_>>>()?;
            let iv = iv
                .trim()
                .strip_prefix('[')
                .and_then(|x| x.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("interval must look like [lo,hi] in '{s}'")))?;
            let (lo, hi) = iv
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("interval needs two endpoints in '{s}'")))?;
            let a = AlgebraicReal::new(coeffs, parse_rational(lo)?, parse_rational(hi)?)?;
            return Ok(RealNumber::Algebraic(a));
        }
        // bare decimals and fractions are accepted as rationals
        parse_rational(s)
            .map(RealNumber::Rational)
            .map_err(|_| Error::Parse(format!("unrecognised number '{s}' (expected rat:, alg:, or akl)")))
    }
}

/// Shortest decimal rendering (up to 17 significant digits) lying in `[lo, hi]`.
pub fn render_decimal(lo: f64, hi: f64) -> String {
    let mid = 0.5 * (lo + hi);
    if !mid.is_finite() {
        return format!("{mid}");
    }
    for digits in 1..=17 {
        let s = format!("{:.*e}", digits - 1, mid);
        if let Ok(v) = s.parse::<f64>() {
            if v >= lo && v <= hi {
                return tidy_decimal(v, digits);
            }
        }
    }
    format!("{mid:e}")
}

fn tidy_decimal(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    if (-5..15).contains(&mag) {
        let decimals = (digits as i32 - 1 - mag).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{:.*e}", digits - 1, v)
    }
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_formats() {
        assert_eq!(parse_rational("9/25").unwrap(), q(9, 25));
        assert_eq!(parse_rational("0.45").unwrap(), q(9, 20));
        assert_eq!(parse_rational("1e-6").unwrap(), q(1, 1_000_000));
        assert_eq!(parse_rational("-3").unwrap(), q(-3, 1));
        let r: RealNumber = "rat:2/5".parse().unwrap();
        assert_eq!(r.as_rational(), Some(q(2, 5)));
        let a: RealNumber = "alg:-1,1,2,2@[2/5,1/2]".parse().unwrap();
        assert!(matches!(a, RealNumber::Algebraic(_)));
        assert!("alg:-2,0,1@[-2,2]".parse::<RealNumber>().is_err());
        assert!("foo".parse::<RealNumber>().is_err());
    }

    #[test]
    fn compare_examples() {
        let a: RealNumber = "alg:-1,1,2,2@[2/5,1/2]".parse().unwrap();
        let p = pow2_neg(64);
        assert_eq!(compare(&RealNumber::rational(2, 5), &a, &p), Cmp::Less);
        assert_eq!(compare(&RealNumber::rational(1, 2), &RealNumber::rational(1, 2), &p), Cmp::Equal);
    }

    #[test]
    fn decimal_rendering_stays_in_enclosure() {
        assert_eq!(render_decimal(0.39432, 0.39434), "0.39433");
        let s = render_decimal(0.6442969, 0.6442971);
        let v: f64 = s.parse().unwrap();
        assert!((0.6442969..=0.6442971).contains(&v));
    }

    #[test]
    fn huge_rationals_convert() {
        let big = Rational::new(BigInt::from(3) << 5000u32, BigInt::from(7) << 5000u32);
        assert!((rational_to_f64(&big) - 3.0 / 7.0).abs() < 1e-15);
    }
}
