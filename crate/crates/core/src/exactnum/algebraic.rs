use super::poly::Poly;
use super::{format_rational, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Refinement steps allowed for a single `refine` call.
pub const DEFAULT_REFINE_CAP: usize = 4096;

/// A real algebraic number: the unique root of an integer polynomial inside
/// a rational isolating interval.
///
/// On construction the polynomial is reduced to the factor that carries the
/// root (square-free part with rational roots split off). For degree at most
/// three the reduced polynomial is irreducible and `minimal_certified` is set.
#[derive(Clone)]
pub struct AlgebraicReal {
    coeffs: Vec<BigInt>,
    lo: Rational,
    hi: Rational,
    minpoly: Poly,
    minimal_certified: bool,
    cache: Arc<Mutex<(Rational, Rational)>>,
}

impl AlgebraicReal {
    pub fn new(coeffs: Vec<BigInt>, lo: Rational, hi: Rational) -> Result<Self> {
        let poly = Poly::from_bigints(&coeffs);
        if poly.degree().unwrap_or(0) == 0 {
            return Err(Error::Parse("algebraic number needs a polynomial of degree >= 1".into()));
        }
        if lo > hi {
            return Err(Error::Parse(format!("empty interval [{lo}, {hi}]")));
        }
        let roots = poly.count_roots(&lo, &hi);
        if roots != 1 {
            return Err(Error::NotIsolating {
                lo: format_rational(&lo),
                hi: format_rational(&hi),
                roots,
            });
        }
        let sf = poly.squarefree();
        let (minpoly, certified, cache) = match sf.rational_roots() {
            Some(rr) => {
                if let Some(r) = rr.iter().find(|r| **r >= lo && **r <= hi) {
                    let m = Poly::new(vec![-r.clone(), Rational::one()]);
                    (m, true, (r.clone(), r.clone()))
                } else {
                    let mut m = sf.clone();
                    for r in &rr {
                        m = m.div_rem(&Poly::new(vec![-r.clone(), Rational::one()])).0;
                    }
                    let m = m.monic();
                    let cert = m.degree().unwrap_or(0) <= 3;
                    (m, cert, (lo.clone(), hi.clone()))
                }
            }
            None => {
                let cert = sf.degree().unwrap_or(0) <= 1;
                (sf, cert, (lo.clone(), hi.clone()))
            }
        };
        Ok(AlgebraicReal {
            coeffs,
            lo,
            hi,
            minpoly,
            minimal_certified: certified,
            cache: Arc::new(Mutex::new(cache)),
        })
    }

    pub fn from_ints(coeffs: &[i64], lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), lo, hi)
    }

    /// `(3 - sqrt 5) / 2`, the root of `x^2 - 3x + 1` in `[1/3, 1/2]`.
    pub fn golden_threshold() -> Self {
        Self::from_ints(&[1, -3, 1], super::q(1, 3), super::q(1, 2)).expect("isolating")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn isolating_interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn minimal_polynomial(&self) -> &Poly {
        &self.minpoly
    }

    pub fn minimal_certified(&self) -> bool {
        self.minimal_certified
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    /// The exact value when the root is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.degree() == 1 {
            let c = self.minpoly.coeffs();
            Some(-&c[0] / &c[1])
        } else {
            None
        }
    }

    /// Tightest enclosure computed so far.
    pub fn current_interval(&self) -> (Rational, Rational) {
        self.cache.lock().unwrap().clone()
    }

    /// Halves the cached enclosure once.
    pub fn bisect_once(&self) {
        let mut guard = self.cache.lock().unwrap();
        let (lo, hi) = guard.clone();
        if lo == hi {
            return;
        }
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        let s_mid = self.minpoly.sign_at(&mid);
        if s_mid == Ordering::Equal {
            *guard = (mid.clone(), mid);
            return;
        }
        if s_mid == self.minpoly.sign_at(&lo) {
            *guard = (mid, hi);
        } else {
            *guard = (lo, mid);
        }
    }

    pub fn refine(&self, width: &Rational) -> Result<(Rational, Rational)> {
        self.refine_capped(width, DEFAULT_REFINE_CAP)
    }

    /// Bisects until the enclosure has width at most `width`. Successive calls
    /// return nested intervals.
    pub fn refine_capped(&self, width: &Rational, cap: usize) -> Result<(Rational, Rational)> {
        if !width.is_positive() {
            return Err(Error::OutOfDomain("refinement width must be positive".into()));
        }
        for _ in 0..=cap {
            let (lo, hi) = self.current_interval();
            if &(&hi - &lo) <= width {
                return Ok((lo, hi));
            }
            self.bisect_once();
        }
        Err(Error::IterationLimit(cap))
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        if let Some(v) = self.as_rational() {
            return v.cmp(r);
        }
        if self.minpoly.eval(r).is_zero() && *r >= self.lo && *r <= self.hi {
            return Ordering::Equal;
        }
        loop {
            let (lo, hi) = self.current_interval();
            if *r <= lo {
                return Ordering::Greater;
            }
            if *r >= hi {
                return Ordering::Less;
            }
            self.bisect_once();
        }
    }

    /// Exact comparison of two algebraic reals.
    pub fn cmp_algebraic(&self, other: &AlgebraicReal) -> Ordering {
        if let Some(r) = other.as_rational() {
            return self.cmp_rational(&r);
        }
        if let Some(r) = self.as_rational() {
            return other.cmp_rational(&r).reverse();
        }
        let g = self.minpoly.gcd(&other.minpoly);
        if g.degree().unwrap_or(0) >= 1 {
            let (alo, ahi) = self.current_interval();
            let (blo, bhi) = other.current_interval();
            let lo = if alo > blo { alo } else { blo };
            let hi = if ahi < bhi { ahi } else { bhi };
            if lo <= hi && g.count_roots(&lo, &hi) >= 1 {
                return Ordering::Equal;
            }
        }
        loop {
            let (alo, ahi) = self.current_interval();
            let (blo, bhi) = other.current_interval();
            if ahi < blo {
                return Ordering::Less;
            }
            if bhi < alo {
                return Ordering::Greater;
            }
            if ahi - alo >= bhi - blo {
                self.bisect_once();
            } else {
                other.bisect_once();
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let w = Rational::new(BigInt::one(), BigInt::from(1u64) << 64);
        let (lo, hi) = self.refine(&w).unwrap_or_else(|_| self.current_interval());
        super::rational_to_f64(&((lo + hi) / Rational::from_integer(BigInt::from(2))))
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "alg:{}@[{},{}]",
            cs.join(","),
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::super::q;
    use super::*;

    #[test]
    fn rejects_non_isolating() {
        // x^2 - 2 has two roots in [-2, 2]
        let e = AlgebraicReal::from_ints(&[-2, 0, 1], q(-2, 1), q(2, 1)).unwrap_err();
        assert!(matches!(e, Error::NotIsolating { roots: 2, .. }));
        let e = AlgebraicReal::from_ints(&[-2, 0, 1], q(2, 1), q(3, 1)).unwrap_err();
        assert!(matches!(e, Error::NotIsolating { roots: 0, .. }));
    }

    #[test]
    fn sqrt2_minus_1_refines() {
        let a = AlgebraicReal::from_ints(&[-1, 2, 1], q(2, 5), q(1, 2)).unwrap();
        let (lo, hi) = a.refine(&q(1, 1_000_000)).unwrap();
        assert!(&hi - &lo <= q(1, 1_000_000));
        let v = 2f64.sqrt() - 1.0;
        assert!(super::super::rational_to_f64(&lo) <= v + 1e-12);
        assert!(super::super::rational_to_f64(&hi) >= v - 1e-12);
        assert!(a.minimal_certified());
        assert_eq!(a.degree(), 2);
    }

    #[test]
    fn rational_root_collapses() {
        // (2x - 1)(x^2 + 1) with root 1/2
        let a = AlgebraicReal::from_ints(&[-1, 2, -1, 2], q(0, 1), q(1, 1)).unwrap();
        assert_eq!(a.as_rational(), Some(q(1, 2)));
        assert_eq!(a.cmp_rational(&q(1, 2)), Ordering::Equal);
    }

    #[test]
    fn compare_distinct_and_equal_algebraics() {
        let s = AlgebraicReal::from_ints(&[-1, 2, 1], q(2, 5), q(1, 2)).unwrap();
        // same number via a different (non-minimal) polynomial: (x^2+2x-1)(x-3)
        let s2 = AlgebraicReal::from_ints(&[3, -7, -1, 1], q(0, 1), q(1, 1)).unwrap();
        assert_eq!(s.cmp_algebraic(&s2), Ordering::Equal);
        let g = AlgebraicReal::golden_threshold();
        assert_eq!(g.cmp_algebraic(&s), Ordering::Less);
        assert_eq!(s.cmp_algebraic(&g), Ordering::Greater);
    }

    #[test]
    fn refinement_is_nested() {
        let a = AlgebraicReal::from_ints(&[-1, 1, 2, 2], q(2, 5), q(1, 2)).unwrap();
        let (l1, h1) = a.refine(&q(1, 1000)).unwrap();
        let (l2, h2) = a.refine(&q(1, 100_000)).unwrap();
        assert!(l1 <= l2 && h2 <= h1);
    }
}
