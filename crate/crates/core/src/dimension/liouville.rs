//! Liouville points of `Gamma_{p/q}` coded by a unique expansion.
//!
//! With `t = (1(-1))^{n_1} 0 (1(-1))^{n_2} 0 ...` and `x = sum eps_i (p/q)^i`,
//! `eps_i` following `t_i = ±1` and a free choice at the zero slots, the
//! truncations at the `k`-th zero slot give rational approximations of order
//! `k` once the block lengths grow fast enough.

use crate::error::{Error, Result};
use crate::exactnum::{compare, default_precision, format_rational, AlgebraicReal, Cmp, RealNumber, Rational};
use crate::expansions::{is_unique_expansion, BaseSystem, Uniqueness};
use crate::words::{Alphabet, Digit, LazySeq, Seq};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum FreeDigitRule {
    #[default]
    Zeros,
    Ones,
}

impl std::str::FromStr for FreeDigitRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" | "zeros" => Ok(FreeDigitRule::Zeros),
            "1" | "ones" => Ok(FreeDigitRule::Ones),
            _ => Err(Error::Parse(format!("free digit rule must be 'zeros' or 'ones', got '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ApproximantCheck {
    pub k: usize,
    #[serde(serialize_with = "crate::words::ser_rational")]
    pub approximant: Rational,
    /// `|x - p_k/q_k| <= q_k^{-k}`.
    pub order_ok: bool,
    /// `q_k <= q^{L_k + 3}` with `L_k = 2(n_1 + ... + n_k) + k`.
    pub denominator_ok: bool,
    /// `p_k/q_k` lies outside the enclosure of `x`.
    pub distinct: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiouvilleWitness {
    #[serde(serialize_with = "crate::words::ser_rational")]
    pub pq: Rational,
    pub k: usize,
    /// `n_1, ..., n_{K+1}`.
    pub n_values: Vec<u64>,
    /// Whether each `n_k` is the least value allowed by the growth condition;
    /// `false` marks a value increased to make the order check hold.
    pub minimal: Vec<bool>,
    pub rule: FreeDigitRule,
    pub approximants: Vec<ApproximantCheck>,
    #[serde(serialize_with = "crate::words::ser_rational")]
    pub x_lo: Rational,
    #[serde(serialize_with = "crate::words::ser_rational")]
    pub x_hi: Rational,
    /// `p/q` lies in `(1/3, (3 - sqrt 5)/2)`.
    pub in_domain: bool,
    pub uniqueness: Uniqueness,
    /// Digits of `t` checked for uniqueness.
    pub checked_depth: usize,
}

impl LiouvilleWitness {
    pub fn all_checks_pass(&self) -> bool {
        self.approximants.iter().all(|a| a.order_ok && a.denominator_ok && a.distinct)
    }
}

/// Does `n` satisfy `(q/p)^{S_k + 2n + k + 1} >= q^{k (S_k + k + 3)}`?
fn growth_ok(p: &BigInt, q: &BigInt, s_k: u64, k: u64, n: u64) -> bool {
    let e = s_k + 2 * n + k + 1;
    let f = k * (s_k + k + 3);
    e >= f && num_traits::pow(q.clone(), (e - f) as usize) >= num_traits::pow(p.clone(), e as usize)
}

fn least_growth(p: &BigInt, q: &BigInt, s_k: u64, k: u64) -> u64 {
    let (pf, qf) = (crate::exactnum::rational_to_f64(&Rational::from_integer(p.clone())), {
        crate::exactnum::rational_to_f64(&Rational::from_integer(q.clone()))
    });
    let f = (k * (s_k + k + 3)) as f64;
    let e_min = f * qf.ln() / (qf / pf).ln();
    let est = ((e_min - (s_k + k + 1) as f64) / 2.0).ceil().max(1.0) as u64;
    let mut n = est.saturating_sub(3).max(1);
    while !growth_ok(p, q, s_k, k, n) {
        n += 1;
    }
    while n > 1 && growth_ok(p, q, s_k, k, n - 1) {
        n -= 1;
    }
    n
}

/// `t` (1-based) for the given block lengths; beyond the last block it
/// continues as `(1(-1))^infinity`.
fn t_digits(n_values: &[u64]) -> Arc<Vec<Digit>> {
    let mut v = Vec::new();
    for &n in n_values {
        for _ in 0..n {
            v.extend([1, -1]);
        }
        v.push(0);
    }
    Arc::new(v)
}

fn eps_of(t: Digit, rule: FreeDigitRule) -> i64 {
    match t {
        1 => 1,
        -1 => 0,
        _ => i64::from(rule == FreeDigitRule::Ones),
    }
}

fn digit_at(t: &[Digit], i: usize) -> Digit {
    // i is 1-based
    match t.get(i - 1) {
        Some(&d) => d,
        None => {
            if (i - 1 - t.len()) % 2 == 0 {
                1
            } else {
                -1
            }
        }
    }
}

/// Builds the construction for `p/q` with `K` approximants.
pub fn liouville_witness(pq: &Rational, k_max: usize, rule: FreeDigitRule, depth_cap: usize) -> Result<LiouvilleWitness> {
    let third = Rational::new(1.into(), 3.into());
    let half = Rational::new(1.into(), 2.into());
    if k_max == 0 {
        return Err(Error::OutOfDomain("K must be at least 1".into()));
    }
    if *pq <= third || *pq >= half {
        return Err(Error::OutOfDomain(format!("{} is not in (1/3, 1/2)", format_rational(pq))));
    }
    let alpha = RealNumber::Rational(pq.clone());
    let golden = RealNumber::Algebraic(AlgebraicReal::golden_threshold());
    let in_domain = compare(&alpha, &golden, &default_precision()) == Cmp::Less;
    let (p, q) = (pq.numer().clone(), pq.denom().clone());
    let one = Rational::one();

    let mut bumps = vec![0u64; k_max + 2];
    loop {
        // n-values with the accumulated bumps
        let mut n_values = vec![1 + bumps[0]];
        let mut minimal = vec![bumps[0] == 0];
        while n_values.len() < k_max + 2 {
            let k = n_values.len() as u64;
            let s_k: u64 = 2 * n_values.iter().sum::<u64>();
            let b = bumps[n_values.len()];
            n_values.push(least_growth(&p, &q, s_k, k) + b);
            minimal.push(b == 0);
        }
        let t = t_digits(&n_values);
        let l = |k: usize| -> usize { (2 * n_values[..k].iter().sum::<u64>()) as usize + k };

        // enclosure of x
        let n_sum = l(k_max + 1) + 40;
        let mut x = Rational::zero();
        let mut pow = one.clone();
        for i in 1..=n_sum {
            pow = &pow * pq;
            if eps_of(digit_at(&t, i), rule) == 1 {
                x += &pow;
            }
        }
        let tail = &pow * pq / (&one - pq);
        let (x_lo, x_hi) = (x.clone(), x + tail);

        let mut approximants = Vec::new();
        let mut failed = None;
        for k in 1..=k_max {
            let lk = l(k);
            let mut a = Rational::zero();
            let mut pw = one.clone();
            for i in 1..=lk {
                pw = &pw * pq;
                if eps_of(digit_at(&t, i), rule) == 1 {
                    a += &pw;
                }
            }
            a += &pw * pq / (&one - pq * pq);
            let qk = Rational::from_integer(a.denom().clone());
            let tol = one.clone() / num_traits::pow(qk.clone(), k);
            let far = (&x_lo - &a).abs().max((&x_hi - &a).abs());
            let order_ok = far <= tol;
            let denominator_ok = *a.denom() <= num_traits::pow(q.clone(), lk + 3);
            let distinct = a < x_lo || a > x_hi;
            if !order_ok && failed.is_none() {
                failed = Some(k);
            }
            approximants.push(ApproximantCheck { k, approximant: a, order_ok, denominator_ok, distinct });
        }
        if let Some(k) = failed {
            bumps[k] += 1;
            if bumps[k] > 64 {
                return Err(Error::VerificationFailed(format!("order check at k = {k} does not stabilise")));
            }
            continue;
        }

        let gen_t = t.clone();
        let seq = LazySeq::new(
            Arc::new(move |i| digit_at(&gen_t, i)),
            Alphabet::SIGNED,
            format!("Liouville coding for {}", format_rational(pq)),
        );
        let sys = BaseSystem::signed(alpha)?;
        let checked_depth = depth_cap.min(t.len() + 64);
        let uniqueness = is_unique_expansion(&sys, &Seq::Lazy(seq), checked_depth)?;
        n_values.truncate(k_max + 1);
        minimal.truncate(k_max + 1);
        return Ok(LiouvilleWitness {
            pq: pq.clone(),
            k: k_max,
            n_values,
            minimal,
            rule,
            approximants,
            x_lo,
            x_hi,
            in_domain,
            uniqueness,
            checked_depth,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;

    #[test]
    fn growth_condition_oracle() {
        // direct rational evaluation of the inequality for 2/5
        let (p, qq) = (BigInt::from(2), BigInt::from(5));
        let lhs = |e: u64| num_traits::pow(q(5, 2), e as usize);
        let rhs = |f: u64| Rational::from_integer(num_traits::pow(BigInt::from(5), f as usize));
        for (s_k, k) in [(2u64, 1u64), (10, 2)] {
            let n = least_growth(&p, &qq, s_k, k);
            assert!(lhs(s_k + 2 * n + k + 1) >= rhs(k * (s_k + k + 3)));
            if n > 1 {
                assert!(lhs(s_k + 2 * (n - 1) + k + 1) < rhs(k * (s_k + k + 3)));
            }
        }
    }

    #[test]
    fn two_fifths_values() {
        let w = liouville_witness(&q(2, 5), 3, FreeDigitRule::Zeros, 4096).unwrap();
        assert_eq!(w.n_values, vec![1, 4, 20, 121]);
        assert!(w.all_checks_pass());
        assert!(!w.in_domain);
    }

    #[test]
    fn both_rules_in_domain() {
        for rule in [FreeDigitRule::Zeros, FreeDigitRule::Ones] {
            let w = liouville_witness(&q(7, 20), 2, rule, 4096).unwrap();
            assert!(w.all_checks_pass());
            assert!(w.in_domain);
            assert!(w.uniqueness.passes(), "{:?}", w.uniqueness);
        }
    }
}
