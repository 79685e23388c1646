//! Hausdorff dimension of `Gamma_alpha ∩ (Gamma_alpha + t)`: the zero-frequency
//! formula, the sets `D_alpha`, the intersection graph with its Perron
//! eigenvalue, an independent box-counting estimate, self-similarity, and the
//! Liouville construction.

mod boxcount;
mod liouville;
mod perron;

pub use boxcount::{box_count_oracle, BoxCount, BoxRow, DEFAULT_BOX_DEPTH, LOOKAHEAD};
pub use liouville::{liouville_witness, ApproximantCheck, FreeDigitRule, LiouvilleWitness};
pub use perron::{
    build_intersection_graph, charpoly, freq_upper_bound_over_expansions, perron_dimension, perron_eigenvalue,
    IntersectionGraph, PerronDimension, PerronEnclosure,
};

use crate::error::{Error, Result};
use crate::exactnum::{
    compare, default_precision, format_rational, pow2_neg, q, rational_to_f64, render_decimal, AlgebraicReal, Cmp,
    RealNumber, Rational,
};
use crate::expansions::{forbidden_zero_run, is_unique_expansion, BaseSystem, Uniqueness};
use crate::thuemorse::{dw, find_smallest_sft_n, sft_blocks, w};
use crate::words::{strongly_eventually_periodic, Alphabet, EPSeq, FreqReport, Seq};
use serde::Serialize;

/// Largest `n` tried when computing `n*`.
pub const NSTAR_CAP: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DimensionForm {
    FrequencyForm,
    PerronForm,
    BoxEstimate,
}

/// A dimension with its exact expression and a certified decimal enclosure.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionValue {
    pub form: DimensionForm,
    pub exact: String,
    pub decimal: String,
    pub lower: f64,
    pub upper: f64,
    /// The intersection is empty; the value 0 is a convention.
    pub empty: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl DimensionValue {
    pub(crate) fn new(form: DimensionForm, exact: String, lower: f64, upper: f64) -> Self {
        DimensionValue { form, exact, decimal: render_decimal(lower, upper), lower, upper, empty: false, note: None }
    }

    pub(crate) fn zero(form: DimensionForm, exact: String) -> Self {
        Self::new(form, exact, 0.0, 0.0)
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

fn down(x: f64) -> f64 {
    x - x.abs() * 4e-16 - f64::MIN_POSITIVE
}

fn up(x: f64) -> f64 {
    x + x.abs() * 4e-16 + f64::MIN_POSITIVE
}

/// Enclosure of `ln x` for `x` in `[lo, hi]`, `lo > 0`.
pub(crate) fn ln_enclosure(lo: &Rational, hi: &Rational) -> (f64, f64) {
    (down(down(rational_to_f64(lo)).ln()), up(up(rational_to_f64(hi)).ln()))
}

/// Enclosure of `-ln alpha`.
pub(crate) fn neg_ln_alpha(alpha: &RealNumber) -> Result<(f64, f64)> {
    let (lo, hi) = alpha.refine(&pow2_neg(80))?;
    let (l, h) = ln_enclosure(&lo, &hi);
    Ok((-h, -l))
}

/// Enclosure of `ln 2 / (-ln alpha)`, the dimension of `Gamma_alpha`.
pub fn full_dimension(alpha: &RealNumber) -> Result<(f64, f64)> {
    let (nl, nh) = neg_ln_alpha(alpha)?;
    let ln2 = std::f64::consts::LN_2;
    Ok((down(down(ln2) / nh), up(up(ln2) / nl)))
}

fn check_open_unit_third_half(alpha: &RealNumber) -> Result<()> {
    let p = default_precision();
    let a = compare(alpha, &RealNumber::rational(1, 3), &p);
    let b = compare(alpha, &RealNumber::rational(1, 2), &p);
    if a == Cmp::Undecided || b == Cmp::Undecided {
        return Err(Error::UndecidedComparison(format!("{alpha} vs (1/3, 1/2)")));
    }
    if a != Cmp::Greater || b != Cmp::Less {
        return Err(Error::OutOfDomain(format!("{alpha} is not in (1/3, 1/2)")));
    }
    Ok(())
}

/// `freq * log 2 / (-log alpha)` for the lower zero density `freq`.
pub fn dim_from_frequency(alpha: &RealNumber, freq: &FreqReport) -> Result<DimensionValue> {
    check_open_unit_third_half(alpha)?;
    Ok(frequency_value(alpha, &freq.lower)?)
}

pub(crate) fn frequency_value(alpha: &RealNumber, freq: &Rational) -> Result<DimensionValue> {
    let exact = format!("{} * log 2 / (-log {})", format_rational(freq), alpha);
    let f = rational_to_f64(freq);
    if f == 0.0 {
        return Ok(DimensionValue::zero(DimensionForm::FrequencyForm, exact));
    }
    let (lo, hi) = full_dimension(alpha)?;
    Ok(DimensionValue::new(DimensionForm::FrequencyForm, exact, down(down(f) * lo), up(up(f) * hi)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DSetKind {
    FiniteList,
    CountableFamily,
    ContainsInterval,
    FullInterval,
    ProperSubset,
}

/// Description of `D_alpha`.
#[derive(Clone, Debug, Serialize)]
pub struct DSetDescription {
    pub kind: DSetKind,
    /// Further properties that also hold (e.g. `ProperSubset` alongside a
    /// finite list).
    pub also: Vec<DSetKind>,
    pub values: Vec<DimensionValue>,
    /// The interval contained in `D_alpha`.
    pub interval: Option<(DimensionValue, DimensionValue)>,
    /// Frequency interval realised by the subshift of finite type at `sft_n`.
    pub sft_interval: Option<(DimensionValue, DimensionValue)>,
    pub nstar: Option<u32>,
    /// `n*` reached the search cap, so the true value may be larger.
    pub cap_active: bool,
    /// Per-`n` outcome of the `(w_n reflect(w_n))^infinity` test.
    pub periodic_tests: Vec<(u32, bool)>,
    pub sft_n: Option<u32>,
    /// Zero frequencies in this open band are not attained.
    #[serde(serialize_with = "ser_band")]
    pub excluded_band: Option<(Rational, Rational)>,
    pub zero_run_k: Option<usize>,
}

fn ser_band<S: serde::Serializer>(b: &Option<(Rational, Rational)>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match b {
        Some((lo, hi)) => s.collect_seq([format_rational(lo), format_rational(hi)]),
        None => s.serialize_none(),
    }
}

/// `(w_n reflect(w_n))^infinity` over `{-1, 0, 1}`.
pub fn w_periodic(n: u32) -> Result<EPSeq> {
    let wn = w(n)?;
    EPSeq::periodic(wn.concat(&wn.reflect()).digits().to_vec(), Alphabet::SIGNED)
}

/// Caps used by [`d_set`].
#[derive(Clone, Copy, Debug)]
pub struct DSetCaps {
    pub nstar_cap: u32,
    pub sft_cap: u32,
    pub depth_cap: usize,
}

impl Default for DSetCaps {
    fn default() -> Self {
        DSetCaps { nstar_cap: NSTAR_CAP, sft_cap: 8, depth_cap: 4096 }
    }
}

/// Describes `D_alpha` for `alpha` in `(1/3, 1/2)`.
pub fn d_set(alpha: &RealNumber, caps: DSetCaps) -> Result<DSetDescription> {
    check_open_unit_third_half(alpha)?;
    let prec = default_precision();
    let golden = RealNumber::Algebraic(AlgebraicReal::golden_threshold());
    let vs_golden = compare(alpha, &golden, &prec);
    let vs_kl = if alpha.is_alpha_kl() { Cmp::Equal } else { compare(alpha, &RealNumber::alpha_kl(), &prec) };
    if vs_golden == Cmp::Undecided || vs_kl == Cmp::Undecided {
        return Err(Error::UndecidedComparison(format!("position of {alpha}")));
    }
    let full = frequency_value(alpha, &q(1, 1))?;
    let zero = frequency_value(alpha, &q(0, 1))?;
    let mut out = DSetDescription {
        kind: DSetKind::FiniteList,
        also: Vec::new(),
        values: Vec::new(),
        interval: None,
        sft_interval: None,
        nstar: None,
        cap_active: false,
        periodic_tests: Vec::new(),
        sft_n: None,
        excluded_band: None,
        zero_run_k: None,
    };
    if vs_golden == Cmp::Greater && !alpha.is_alpha_kl() {
        let sys = BaseSystem::signed(alpha.clone())?;
        let k = forbidden_zero_run(&sys, caps.depth_cap)?;
        let n = k as i64 + 1;
        out.zero_run_k = Some(k);
        out.excluded_band = Some((q(n, n + 1), q(1, 1)));
        out.also.push(DSetKind::ProperSubset);
    }
    match vs_kl {
        Cmp::Greater => {
            let sys = BaseSystem::signed(alpha.clone())?;
            let mut nstar = 0;
            for n in 1..=caps.nstar_cap {
                let pass = is_unique_expansion(&sys, &Seq::Periodic(w_periodic(n)?), caps.depth_cap)?.is_unique();
                out.periodic_tests.push((n, pass));
                if pass {
                    nstar = n;
                }
            }
            out.nstar = Some(nstar);
            out.cap_active = nstar == caps.nstar_cap;
            out.values.push(zero);
            for n in 1..=nstar {
                out.values.push(frequency_value(alpha, &dw(n))?);
            }
            out.values.push(full);
        }
        Cmp::Equal => {
            out.kind = DSetKind::CountableFamily;
            out.values.push(zero);
            out.values.push(frequency_value(alpha, &q(1, 3))?);
            for n in 1..=caps.nstar_cap {
                out.values.push(frequency_value(alpha, &dw(n))?);
            }
            out.values.push(full);
        }
        _ => {
            if vs_golden == Cmp::Greater {
                out.kind = DSetKind::ContainsInterval;
            } else {
                out.kind = DSetKind::FullInterval;
                out.also.push(DSetKind::ContainsInterval);
            }
            let search = find_smallest_sft_n(alpha, caps.sft_cap, caps.depth_cap)?;
            let b = sft_blocks(search.n)?;
            let (lo, hi) = if b.d_omega1 <= b.d_omega2 { (b.d_omega1, b.d_omega2) } else { (b.d_omega2, b.d_omega1) };
            out.sft_n = Some(search.n);
            out.sft_interval = Some((frequency_value(alpha, &lo)?, frequency_value(alpha, &hi)?));
            out.interval = if out.kind == DSetKind::FullInterval {
                Some((zero, full))
            } else {
                out.sft_interval.clone()
            };
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SelfSimilarity {
    SelfSimilar { i: String, j: String },
    NotSelfSimilar,
    NotUnique(Uniqueness),
}

/// `(1 - |t_i|)` as a `{0, 1}` sequence.
pub fn abs_complement(seq: &EPSeq) -> Result<EPSeq> {
    seq.map_digits(Alphabet::BINARY, |d| 1 - d.abs())
}

/// Self-similarity of the intersection for a unique coding `seq`, decided by
/// strong eventual periodicity of `(1 - |t_i|)`.
pub fn self_similar_check(sys: &BaseSystem, seq: &EPSeq, depth_cap: usize) -> Result<SelfSimilarity> {
    let u = is_unique_expansion(sys, &Seq::Periodic(seq.clone()), depth_cap)?;
    if !u.is_unique() {
        return Ok(SelfSimilarity::NotUnique(u));
    }
    Ok(match strongly_eventually_periodic(&abs_complement(seq)?)? {
        Some((i, j)) => SelfSimilarity::SelfSimilar { i: i.to_string(), j: j.to_string() },
        None => SelfSimilarity::NotSelfSimilar,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TargetHit {
    #[serde(serialize_with = "crate::words::ser_rational")]
    pub target: Rational,
    #[serde(serialize_with = "ser_ep")]
    pub seq: EPSeq,
    #[serde(serialize_with = "crate::words::ser_rational")]
    pub density: Rational,
    pub n1: usize,
    pub n2: usize,
}

fn ser_ep<S: serde::Serializer>(e: &EPSeq, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

/// `((1 (-1))^{n1} 0^{n2})^infinity`.
pub fn block_family(n1: usize, n2: usize) -> Result<EPSeq> {
    let mut period = Vec::with_capacity(2 * n1 + n2);
    for _ in 0..n1 {
        period.extend([1, -1]);
    }
    period.extend(std::iter::repeat_n(0, n2));
    EPSeq::periodic(period, Alphabet::SIGNED)
}

/// For each target zero density `a`, a sequence `((1(-1))^{n1} 0^{n2})^infinity`
/// of density within `tol` of `a` that passes the uniqueness and
/// self-similarity tests. Requires `alpha <= (3 - sqrt 5)/2`.
pub fn dense_selfsimilar_targets(
    alpha: &RealNumber,
    targets: &[Rational],
    tol: &Rational,
    depth_cap: usize,
) -> Result<Vec<TargetHit>> {
    let golden = RealNumber::Algebraic(AlgebraicReal::golden_threshold());
    match compare(alpha, &golden, &default_precision()) {
        Cmp::Less | Cmp::Equal => {}
        Cmp::Undecided => return Err(Error::UndecidedComparison(format!("{alpha} vs (3-sqrt 5)/2"))),
        Cmp::Greater => return Err(Error::OutOfDomain(format!("{alpha} exceeds (3-sqrt 5)/2"))),
    }
    if *tol <= q(0, 1) {
        return Err(Error::OutOfDomain("tolerance must be positive".into()));
    }
    let sys = BaseSystem::signed(alpha.clone())?;
    let max_len = rational_to_f64(&(q(2, 1) / tol)).ceil() as usize + 4;
    let mut hits = Vec::new();
    for a in targets {
        if *a < q(0, 1) || *a > q(1, 1) {
            return Err(Error::OutOfDomain(format!("target {} outside [0, 1]", format_rational(a))));
        }
        let mut found = None;
        'search: for len in 2..=max_len {
            for n1 in 1..=len / 2 {
                let n2 = len - 2 * n1;
                let d = q(n2 as i64, len as i64);
                let diff = if &d > a { &d - a } else { a - &d };
                if &diff > tol {
                    continue;
                }
                let seq = block_family(n1, n2)?;
                if matches!(self_similar_check(&sys, &seq, depth_cap)?, SelfSimilarity::SelfSimilar { .. }) {
                    found = Some(TargetHit { target: a.clone(), seq, density: d, n1, n2 });
                    break 'search;
                }
            }
        }
        hits.push(found.ok_or_else(|| Error::NotFoundUnderCap(max_len as u32))?);
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequency_examples() {
        let a = RealNumber::rational(37, 100);
        let d = dim_from_frequency(&a, &FreqReport::exact(q(1, 3))).unwrap();
        let v = (2f64.ln() / -(0.37f64.ln())) / 3.0;
        assert!(d.contains(v));
        assert!((d.midpoint() - 0.232).abs() < 5e-4);
        let z = dim_from_frequency(&a, &FreqReport::exact(q(0, 1))).unwrap();
        assert_eq!((z.lower, z.upper), (0.0, 0.0));
        let f = dim_from_frequency(&a, &FreqReport::exact(q(1, 1))).unwrap();
        assert!(f.contains(2f64.ln() / -(0.37f64.ln())));
        assert!(dim_from_frequency(&RealNumber::rational(1, 4), &FreqReport::exact(q(1, 2))).is_err());
    }

    #[test]
    fn family_densities() {
        let s = block_family(1, 2).unwrap();
        assert_eq!(s.zero_density().lower, q(1, 2));
        assert_eq!(block_family(1, 0).unwrap().to_string(), "(+-)");
    }

    #[test]
    fn abs_complement_of_lemma_family() {
        let s = block_family(2, 3).unwrap();
        let u = abs_complement(&s).unwrap();
        assert_eq!(u.period(), &[0, 0, 0, 0, 1, 1, 1]);
    }
}
