//! Arithmetic in `Q(alpha)` for a rational or algebraic base `alpha`.
//!
//! Elements are polynomials in `alpha` reduced modulo its minimal polynomial,
//! so two elements are equal exactly when their coefficient vectors are.

use super::algebraic::AlgebraicReal;
use super::poly::Poly;
use super::{format_rational, q, RealNumber, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub struct AlgebraicField {
    alpha: AlgebraicReal,
    modulus: Poly,
    /// Same-number view of `alpha` used when the caller passed a rational.
    source: RealNumber,
}

impl AlgebraicField {
    pub fn new(alpha: &RealNumber) -> Result<Arc<Self>> {
        let alg = match alpha {
            RealNumber::Rational(r) => {
                AlgebraicReal::new(vec![-r.numer().clone(), r.denom().clone()], r.clone(), r.clone())?
            }
            RealNumber::Algebraic(a) => a.clone(),
            RealNumber::Series(s) => return Err(Error::UnsupportedBase(s.to_string())),
        };
        let modulus = alg.minimal_polynomial().monic();
        Ok(Arc::new(AlgebraicField { alpha: alg, modulus, source: alpha.clone() }))
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn alpha(&self) -> &AlgebraicReal {
        &self.alpha
    }

    pub fn base(&self) -> &RealNumber {
        &self.source
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn same_as(&self, other: &AlgebraicField) -> bool {
        std::ptr::eq(self, other)
            || (self.modulus == other.modulus && self.alpha.isolating_interval() == other.alpha.isolating_interval())
    }

    /// Sign of `p(alpha)` for a reduced polynomial `p`.
    fn sign_of(&self, p: &Poly) -> Ordering {
        match p.degree() {
            None => return Ordering::Equal,
            Some(0) => return p.coeffs()[0].cmp(&Rational::zero()),
            _ => {}
        }
        if !self.alpha.minimal_certified() {
            let g = p.gcd(&self.modulus);
            if g.degree().unwrap_or(0) >= 1 {
                let (lo, hi) = self.alpha.isolating_interval();
                if g.count_roots(lo, hi) >= 1 {
                    return Ordering::Equal;
                }
            }
        }
        loop {
            let (lo, hi) = self.alpha.current_interval();
            let (vl, vh) = p.eval_interval(&lo, &hi);
            if vl.is_positive() {
                return Ordering::Greater;
            }
            if vh.is_negative() {
                return Ordering::Less;
            }
            if lo == hi {
                return Ordering::Equal;
            }
            self.alpha.bisect_once();
        }
    }
}

pub fn element(field: &Arc<AlgebraicField>, coeffs: Vec<Rational>) -> QAlpha {
    QAlpha::from_poly(field, Poly::new(coeffs))
}

/// An element of `Q(alpha)` in canonical reduced form.
#[derive(Clone)]
pub struct QAlpha {
    field: Arc<AlgebraicField>,
    poly: Poly,
}

impl QAlpha {
    pub fn from_poly(field: &Arc<AlgebraicField>, p: Poly) -> Self {
        let poly = p.rem(&field.modulus);
        QAlpha { field: field.clone(), poly }
    }

    pub fn from_rational(field: &Arc<AlgebraicField>, r: Rational) -> Self {
        Self::from_poly(field, Poly::constant(r))
    }

    pub fn from_int(field: &Arc<AlgebraicField>, n: i64) -> Self {
        Self::from_rational(field, q(n, 1))
    }

    /// The generator `alpha` itself.
    pub fn alpha(field: &Arc<AlgebraicField>) -> Self {
        Self::from_poly(field, Poly::x())
    }

    /// Embeds a real number that lies in the field: a rational, or an
    /// algebraic number equal to the generator or to a rational.
    pub fn from_real(field: &Arc<AlgebraicField>, x: &RealNumber) -> Result<Self> {
        match x {
            RealNumber::Rational(r) => Ok(Self::from_rational(field, r.clone())),
            RealNumber::Algebraic(a) => {
                if let Some(r) = a.as_rational() {
                    return Ok(Self::from_rational(field, r));
                }
                if a.cmp_algebraic(field.alpha()) == Ordering::Equal {
                    return Ok(Self::alpha(field));
                }
                Err(Error::NotInField(a.to_string()))
            }
            RealNumber::Series(s) => Err(Error::NotInField(s.to_string())),
        }
    }

    pub fn field(&self) -> &Arc<AlgebraicField> {
        &self.field
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// Coefficients padded to the field degree.
    pub fn coeffs(&self) -> Vec<Rational> {
        let d = self.field.degree().max(1);
        (0..d).map(|i| self.poly.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.poly.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.poly.coeffs()[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, o: &QAlpha) -> QAlpha {
        QAlpha { field: self.field.clone(), poly: self.poly.add(&o.poly) }
    }

    pub fn sub(&self, o: &QAlpha) -> QAlpha {
        QAlpha { field: self.field.clone(), poly: self.poly.sub(&o.poly) }
    }

    pub fn neg(&self) -> QAlpha {
        QAlpha { field: self.field.clone(), poly: self.poly.neg() }
    }

    pub fn mul(&self, o: &QAlpha) -> QAlpha {
        Self::from_poly(&self.field, self.poly.mul(&o.poly))
    }

    pub fn scale(&self, r: &Rational) -> QAlpha {
        QAlpha { field: self.field.clone(), poly: self.poly.scale(r) }
    }

    pub fn add_int(&self, n: i64) -> QAlpha {
        self.add(&QAlpha::from_int(&self.field, n))
    }

    pub fn pow(&self, n: u32) -> QAlpha {
        let mut acc = QAlpha::from_int(&self.field, 1);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn inv(&self) -> Result<QAlpha> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("Q(alpha) inverse"));
        }
        let (g, s) = self.poly.gcd_inverse(&self.field.modulus);
        if g.degree() != Some(0) {
            if self.sign() == Ordering::Equal {
                return Err(Error::DivisionByZero("Q(alpha) inverse"));
            }
            return Err(Error::NonMinimalPolynomial(format!("{:?}", self.field.modulus)));
        }
        Ok(QAlpha { field: self.field.clone(), poly: s })
    }

    pub fn div(&self, o: &QAlpha) -> Result<QAlpha> {
        Ok(self.mul(&o.inv()?))
    }

    /// Certified sign of the element's real value.
    pub fn sign(&self) -> Ordering {
        self.field.sign_of(&self.poly)
    }

    pub fn cmp_value(&self, o: &QAlpha) -> Ordering {
        self.sub(o).sign()
    }

    /// Rational interval of width at most `width` containing the value.
    pub fn enclose(&self, width: &Rational) -> (Rational, Rational) {
        if let Some(r) = self.as_rational() {
            return (r.clone(), r);
        }
        loop {
            let (lo, hi) = self.field.alpha.current_interval();
            let (vl, vh) = self.poly.eval_interval(&lo, &hi);
            if &(&vh - &vl) <= width || lo == hi {
                return (vl, vh);
            }
            self.field.alpha.bisect_once();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let w = Rational::new(BigInt::one(), BigInt::from(1u64) << 64);
        let (lo, hi) = self.enclose(&w);
        super::rational_to_f64(&((lo + hi) / q(2, 1)))
    }

    /// Canonical coefficient vector rendered as comma-separated rationals.
    pub fn canonical_string(&self) -> String {
        self.coeffs().iter().map(format_rational).collect::<Vec<_>>().join(",")
    }
}

impl PartialEq for QAlpha {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.poly == other.poly
    }
}

impl Eq for QAlpha {}

impl Hash for QAlpha {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.poly.hash(state);
    }
}

impl fmt::Debug for QAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.canonical_string())
    }
}

/// Reduces `sum coeffs[i] alpha^i` to canonical form in `Q(alpha)`.
pub fn eval_poly_in_alpha(coeffs: &[Rational], alpha: &RealNumber) -> Result<QAlpha> {
    let field = AlgebraicField::new(alpha)?;
    Ok(QAlpha::from_poly(&field, Poly::new(coeffs.to_vec())))
}

/// `sum_{i>=1} d_i alpha^i` for an eventually periodic digit sequence given as
/// `(preperiod, period)`.
pub fn eventually_periodic_value(field: &Arc<AlgebraicField>, pre: &[i32], period: &[i32]) -> Result<QAlpha> {
    let a = QAlpha::alpha(field);
    let mut value = QAlpha::from_int(field, 0);
    let mut ap = a.clone();
    for &d in pre {
        value = value.add(&ap.scale(&q(d as i64, 1)));
        ap = ap.mul(&a);
    }
    if period.is_empty() {
        return Ok(value);
    }
    let mut block = QAlpha::from_int(field, 0);
    let mut bp = QAlpha::from_int(field, 1);
    for &d in period {
        bp = bp.mul(&a);
        block = block.add(&bp.scale(&q(d as i64, 1)));
    }
    // ap = alpha^{|pre|+1}; the periodic part contributes alpha^{|pre|} * block / (1 - alpha^L)
    let shift = ap.div(&a)?;
    let denom = QAlpha::from_int(field, 1).sub(&bp);
    Ok(value.add(&shift.mul(&block).div(&denom)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic_alpha() -> RealNumber {
        RealNumber::Algebraic(AlgebraicReal::from_ints(&[-1, 1, 2, 2], q(2, 5), q(1, 2)).unwrap())
    }

    #[test]
    fn rational_base_collapses() {
        let e = eval_poly_in_alpha(&[q(0, 1), q(-1, 1)], &RealNumber::Rational(q(2, 5))).unwrap();
        assert_eq!(e.as_rational(), Some(q(-2, 5)));
    }

    #[test]
    fn minimal_polynomial_reduces_to_zero() {
        let alpha = cubic_alpha();
        let e = eval_poly_in_alpha(&[q(-1, 1), q(1, 1), q(2, 1), q(2, 1)], &alpha).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn inverse_and_sign() {
        let f = AlgebraicField::new(&cubic_alpha()).unwrap();
        let a = QAlpha::alpha(&f);
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv), QAlpha::from_int(&f, 1));
        assert_eq!(a.sign(), Ordering::Greater);
        assert_eq!(a.add_int(-1).sign(), Ordering::Less);
        // alpha is about 0.44062
        assert_eq!(a.sub(&QAlpha::from_rational(&f, q(440, 1000))).sign(), Ordering::Greater);
        assert_eq!(a.sub(&QAlpha::from_rational(&f, q(441, 1000))).sign(), Ordering::Less);
    }

    #[test]
    fn alternating_series_matches_closed_form() {
        let f = AlgebraicField::new(&cubic_alpha()).unwrap();
        let a = QAlpha::alpha(&f);
        let closed = a.neg().div(&a.add_int(1)).unwrap();
        let series = eventually_periodic_value(&f, &[], &[-1, 1]).unwrap();
        assert_eq!(closed, series);
    }
}
