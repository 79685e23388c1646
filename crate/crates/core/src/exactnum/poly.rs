//! Dense univariate polynomials over the rationals.

use super::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Coefficients are stored low degree first with no trailing zeros, so the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(Rational::from_integer_i64).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => {
                let l = l.clone();
                Poly::new(self.coeffs.iter().map(|c| c / &l).collect())
            }
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.lead().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if sd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Returns `(g, s)` with `g = gcd(self, m)` monic and `s * self ≡ g (mod m)`.
    pub fn gcd_inverse(&self, m: &Poly) -> (Poly, Poly) {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (Poly::zero(), Poly::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        match r0.lead().cloned() {
            None => (Poly::zero(), Poly::zero()),
            Some(l) => {
                let inv = Rational::one() / l;
                (r0.scale(&inv), s0.scale(&inv).rem(m))
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        self.eval(x).cmp(&Rational::zero())
    }

    /// Rigorous enclosure of `p([lo, hi])` by interval Horner evaluation.
    pub fn eval_interval(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let mut acc = (Rational::zero(), Rational::zero());
        for c in self.coeffs.iter().rev() {
            let prods = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let mn = prods.iter().min().unwrap().clone();
            let mx = prods.iter().max().unwrap().clone();
            acc = (mn + c, mx + c);
        }
        acc
    }

    fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            chain.push(r);
        }
        chain.pop();
        chain
    }

    fn sign_variations(chain: &[Poly], x: &Rational) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in chain {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the closed interval `[lo, hi]`.
    pub fn count_roots(&self, lo: &Rational, hi: &Rational) -> usize {
        if self.degree().unwrap_or(0) == 0 || lo > hi {
            return 0;
        }
        let sf = self.squarefree();
        let at_lo = usize::from(sf.eval(lo).is_zero());
        if lo == hi {
            return at_lo;
        }
        let chain = sf.sturm_chain();
        Self::sign_variations(&chain, lo) - Self::sign_variations(&chain, hi) + at_lo
    }

    /// Rational roots by the rational root theorem. Returns `None` when the
    /// extreme coefficients are too large to enumerate divisors.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        let sf = self.squarefree();
        let d = sf.degree()?;
        if d == 0 {
            return Some(Vec::new());
        }
        let ints = integer_primitive(&sf);
        let mut roots = Vec::new();
        let mut work = ints.clone();
        // strip zero roots
        let mut k = 0;
        while work[k].is_zero() {
            k += 1;
        }
        if k > 0 {
            roots.push(Rational::zero());
            work.drain(..k);
        }
        let c0 = work[0].abs();
        let cn = work.last().unwrap().abs();
        let limit = BigInt::from(1_000_000_000u64);
        if c0 > limit || cn > limit {
            return None;
        }
        let c0: u64 = c0.try_into().ok()?;
        let cn: u64 = cn.try_into().ok()?;
        let poly = Poly::from_bigints(&work);
        for p in divisors(c0) {
            for q in divisors(cn) {
                for sgn in [1i64, -1] {
                    let r = Rational::new(BigInt::from(p) * sgn, BigInt::from(q));
                    if poly.eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out
}

/// Scales to integer coefficients with content 1.
pub fn integer_primitive(p: &Poly) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -1 } else { 1 };
    ints.into_iter().map(|c| c / &g * sign).collect()
}

trait FromI64 {
    fn from_integer_i64(v: i64) -> Self;
}

impl FromI64 for Rational {
    fn from_integer_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn division_identity() {
        let a = Poly::from_ints([1, -3, 0, 2, 5]);
        let b = Poly::from_ints([-1, 2, 2]);
        let (qt, r) = a.div_rem(&b);
        assert_eq!(qt.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x - 1)(x + 2) and (x - 1)(x^2 + 1)
        let a = Poly::from_ints([-2, 1, 1]);
        let b = Poly::from_ints([-1, 1, -1, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints([-1, 1]));
    }

    #[test]
    fn modular_inverse() {
        let m = Poly::from_ints([-1, 2, 1]); // x^2 + 2x - 1
        let a = Poly::from_ints([3, 1]);
        let (g, s) = a.gcd_inverse(&m);
        assert_eq!(g, Poly::constant(q(1, 1)));
        assert_eq!(a.mul(&s).rem(&m), Poly::constant(q(1, 1)));
    }

    #[test]
    fn sturm_counts() {
        // (x^2 - 2)(x - 3): roots ±1.414..., 3
        let p = Poly::from_ints([-2, 0, 1]).mul(&Poly::from_ints([-3, 1]));
        assert_eq!(p.count_roots(&q(-2, 1), &q(4, 1)), 3);
        assert_eq!(p.count_roots(&q(0, 1), &q(2, 1)), 1);
        assert_eq!(p.count_roots(&q(3, 1), &q(3, 1)), 1);
        assert_eq!(p.count_roots(&q(2, 1), &q(3, 1)), 1);
        // repeated root counted once
        let r = Poly::from_ints([-1, 1]).mul(&Poly::from_ints([-1, 1]));
        assert_eq!(r.count_roots(&q(0, 1), &q(2, 1)), 1);
    }

    #[test]
    fn rational_roots_found() {
        let p = Poly::from_ints([-2, 1]).mul(&Poly::from_ints([1, 3])).mul(&Poly::from_ints([-2, 0, 1]));
        assert_eq!(p.rational_roots().unwrap(), vec![q(-1, 3), q(2, 1)]);
    }

    #[test]
    fn interval_eval_contains_point_values() {
        let p = Poly::from_ints([-1, 1, 2, 2]);
        let (lo, hi) = p.eval_interval(&q(2, 5), &q(1, 2));
        for x in [q(2, 5), q(9, 20), q(1, 2)] {
            let v = p.eval(&x);
            assert!(lo <= v && v <= hi);
        }
    }
}
