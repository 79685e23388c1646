//! Reals known only through rigorously bounded series.

use super::{q, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::{Arc, Mutex};

/// Integer coefficient generator, indexed from 1.
pub type CoeffFn = Arc<dyn Fn(usize) -> i64 + Send + Sync>;

/// Largest number of series terms a single enclosure may use.
pub const DEFAULT_TERM_CAP: usize = 1 << 16;

#[derive(Clone)]
enum Kind {
    /// `sum_{i>=1} c_i r^i` with `|c_i| <= bound`.
    Power { coeffs: CoeffFn, ratio: Rational, bound: Rational },
    /// The root in `bracket` of `sum_{i>=1} c_i x^i = target`, where
    /// `0 <= c_i <= bound` and infinitely many `c_i` are positive, so the
    /// left side is strictly increasing on `(0, 1)`.
    Root { coeffs: CoeffFn, bound: Rational, target: Rational, bracket: (Rational, Rational) },
}

/// Named constants that other modules recognise structurally.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnownConstant {
    AlphaKl,
}

#[derive(Clone)]
pub struct SeriesReal {
    kind: Kind,
    description: String,
    known: Option<KnownConstant>,
    cache: Arc<Mutex<Option<(Rational, Rational)>>>,
}

impl SeriesReal {
    pub fn power(coeffs: CoeffFn, ratio: Rational, bound: Rational, description: impl Into<String>) -> Result<Self> {
        if !(ratio.is_positive() && ratio < Rational::one()) {
            return Err(Error::OutOfDomain("series ratio must lie in (0, 1)".into()));
        }
        Ok(SeriesReal {
            kind: Kind::Power { coeffs, ratio, bound },
            description: description.into(),
            known: None,
            cache: Arc::new(Mutex::new(None)),
        })
    }

    pub fn root(
        coeffs: CoeffFn,
        bound: Rational,
        target: Rational,
        bracket: (Rational, Rational),
        description: impl Into<String>,
    ) -> Result<Self> {
        let s = SeriesReal {
            kind: Kind::Root { coeffs, bound, target, bracket: bracket.clone() },
            description: description.into(),
            known: None,
            cache: Arc::new(Mutex::new(None)),
        };
        if s.root_sign(&bracket.0, DEFAULT_TERM_CAP)? >= 0 || s.root_sign(&bracket.1, DEFAULT_TERM_CAP)? <= 0 {
            return Err(Error::OutOfDomain("bracket does not straddle the root".into()));
        }
        Ok(s)
    }

    pub(crate) fn with_known(mut self, k: KnownConstant) -> Self {
        self.known = Some(k);
        self
    }

    pub fn known(&self) -> Option<KnownConstant> {
        self.known
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Interval of width at most `width` containing the value.
    pub fn refine(&self, width: &Rational) -> Result<(Rational, Rational)> {
        self.refine_capped(width, DEFAULT_TERM_CAP)
    }

    pub fn refine_capped(&self, width: &Rational, cap: usize) -> Result<(Rational, Rational)> {
        if !width.is_positive() {
            return Err(Error::OutOfDomain("refinement width must be positive".into()));
        }
        let fresh = match &self.kind {
            Kind::Power { coeffs, ratio, bound } => power_enclosure(coeffs, ratio, bound, width, cap)?,
            Kind::Root { bracket, .. } => {
                let start = self.cache.lock().unwrap().clone().unwrap_or_else(|| bracket.clone());
                self.bisect_root(start, width, cap)?
            }
        };
        let mut guard = self.cache.lock().unwrap();
        let out = match guard.as_ref() {
            Some((clo, chi)) => (
                if *clo > fresh.0 { clo.clone() } else { fresh.0 },
                if *chi < fresh.1 { chi.clone() } else { fresh.1 },
            ),
            None => fresh,
        };
        *guard = Some(out.clone());
        Ok(out)
    }

    /// Sign of `F(x) - target` for the root kind: -1, 1 (never 0; an exact hit
    /// is reported as an iteration limit).
    fn root_sign(&self, x: &Rational, cap: usize) -> Result<i32> {
        let Kind::Root { coeffs, bound, target, .. } = &self.kind else {
            unreachable!()
        };
        let mut n = 16usize;
        loop {
            let s = partial_sum(coeffs, x, n);
            let tail = bound * pow(x, n + 1) / (Rational::one() - x);
            if s > *target {
                return Ok(1);
            }
            if s + tail < *target {
                return Ok(-1);
            }
            if n >= cap {
                return Err(Error::IterationLimit(cap));
            }
            n = (n * 2).min(cap);
        }
    }

    fn bisect_root(&self, (mut lo, mut hi): (Rational, Rational), width: &Rational, cap: usize) -> Result<(Rational, Rational)> {
        let two = q(2, 1);
        let mut steps = 0;
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / &two;
            if self.root_sign(&mid, cap)? > 0 {
                hi = mid;
            } else {
                lo = mid;
            }
            steps += 1;
            if steps > cap {
                return Err(Error::IterationLimit(cap));
            }
        }
        Ok((lo, hi))
    }

    pub fn to_f64(&self) -> f64 {
        let w = Rational::new(BigInt::one(), BigInt::from(1u64) << 60);
        match self.refine(&w) {
            Ok((lo, hi)) => super::rational_to_f64(&((lo + hi) / q(2, 1))),
            Err(_) => f64::NAN,
        }
    }
}

fn pow(x: &Rational, n: usize) -> Rational {
    num_traits::pow(x.clone(), n)
}

/// `sum_{i=1}^n c_i x^i`, evaluated by integer Horner on `x = a/b`.
pub(crate) fn partial_sum(coeffs: &CoeffFn, x: &Rational, n: usize) -> Rational {
    if n == 0 {
        return Rational::zero();
    }
    let a = x.numer();
    let b = x.denom();
    let mut acc = BigInt::zero();
    let mut bp = BigInt::one();
    for i in (1..=n).rev() {
        acc = BigInt::from(coeffs(i)) * &bp + a * acc;
        bp *= b;
    }
    // acc = sum c_i a^{i-1} b^{n-i}; bp = b^n
    Rational::new(acc * a, bp)
}

fn power_enclosure(coeffs: &CoeffFn, r: &Rational, bound: &Rational, width: &Rational, cap: usize) -> Result<(Rational, Rational)> {
    let one = Rational::one();
    let factor = q(2, 1) * bound / (&one - r);
    let mut n = 0usize;
    let mut rp = r.clone();
    // need 2 * bound * r^{n+1} / (1 - r) <= width
    while &(&factor * &rp) > width {
        n += 1;
        rp *= r;
        if n > cap {
            return Err(Error::IterationLimit(cap));
        }
    }
    let s = partial_sum(coeffs, r, n);
    let tail = bound * &rp / (&one - r);
    Ok((&s - &tail, s + tail))
}

impl fmt::Display for SeriesReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.known {
            Some(KnownConstant::AlphaKl) => write!(f, "akl"),
            None => write!(f, "series:{}", self.description),
        }
    }
}

impl fmt::Debug for SeriesReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_third_as_decimal_series() {
        let s = SeriesReal::power(Arc::new(|_| 3), q(1, 10), q(3, 1), "0.333...").unwrap();
        let (lo, hi) = s.refine(&q(1, 1000)).unwrap();
        assert!(lo <= q(1, 3) && q(1, 3) <= hi);
        assert!(&hi - &lo <= q(1, 1000));
        assert!(lo >= q(332, 1000) && hi <= q(335, 1000));
    }

    #[test]
    fn partial_sum_matches_naive() {
        let c: CoeffFn = Arc::new(|i| (i as i64 % 3) - 1);
        let x = q(5, 12);
        let naive = (1..=20).fold(Rational::zero(), |acc, i| acc + Rational::from_integer(BigInt::from(c(i))) * pow(&x, i));
        assert_eq!(partial_sum(&c, &x, 20), naive);
    }

    #[test]
    fn root_of_odd_power_series() {
        // x / (1 - x^2) = 1  =>  x = (sqrt 5 - 1) / 2
        let s = SeriesReal::root(Arc::new(|i| (i % 2) as i64), q(1, 1), q(1, 1), (q(1, 2), q(3, 4)), "odd").unwrap();
        let (lo, hi) = s.refine(&q(1, 1 << 30)).unwrap();
        let v = (5f64.sqrt() - 1.0) / 2.0;
        assert!(super::super::rational_to_f64(&lo) <= v && v <= super::super::rational_to_f64(&hi));
        let (lo2, hi2) = s.refine(&q(1, 1 << 20)).unwrap();
        assert!(lo2 <= lo && hi <= hi2);
    }
}
