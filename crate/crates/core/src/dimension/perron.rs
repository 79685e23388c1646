//! Intersection graph of an expansion automaton, its Perron eigenvalue, and
//! the maximum cycle mean of the zero indicator.

use super::{down, ln_enclosure, neg_ln_alpha, up, DimensionForm, DimensionValue};
use crate::error::{Error, Result};
use crate::exactnum::poly::{integer_primitive, Poly};
use crate::exactnum::{format_rational, pow2_neg, rational_to_f64, AlgebraicReal, RealNumber, Rational};
use crate::expansions::ExpansionAutomaton;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Count matrix over the trimmed states of an expansion automaton. A digit
/// `d` edge carries `#({0,1} ∩ ({0,1} + d))` labels: one for `±1`, two for `0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionGraph {
    /// Automaton state indices kept, in increasing order.
    pub states: Vec<usize>,
    pub matrix: Vec<Vec<u64>>,
}

impl IntersectionGraph {
    pub fn from_matrix(matrix: Vec<Vec<u64>>) -> Self {
        IntersectionGraph { states: (0..matrix.len()).collect(), matrix }
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }
}

pub fn build_intersection_graph(auto: &ExpansionAutomaton) -> Result<IntersectionGraph> {
    auto.require_complete()?;
    let live = auto.live_states();
    let n = auto.num_states();
    // states reachable from the initial state through live states
    let mut reach = vec![false; n];
    if live[auto.initial] {
        reach[auto.initial] = true;
        let mut stack = vec![auto.initial];
        while let Some(s) = stack.pop() {
            for e in auto.out_edges(s) {
                if live[e.to] && !reach[e.to] {
                    reach[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
    }
    let states: Vec<usize> = (0..n).filter(|&s| reach[s]).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &s) in states.iter().enumerate() {
        pos[s] = i;
    }
    let mut matrix = vec![vec![0u64; states.len()]; states.len()];
    for e in &auto.edges {
        if reach[e.from] && reach[e.to] {
            matrix[pos[e.from]][pos[e.to]] += if e.digit == 0 { 2 } else { 1 };
        }
    }
    Ok(IntersectionGraph { states, matrix })
}

/// Certified enclosure of the spectral radius.
#[derive(Clone, Debug, Serialize)]
pub struct PerronEnclosure {
    #[serde(serialize_with = "crate::words::ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "crate::words::ser_rational")]
    pub hi: Rational,
    /// Power-iteration estimate.
    pub estimate: f64,
    /// Characteristic polynomial, low degree first.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_ints")]
    pub charpoly: Option<Vec<BigInt>>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_alg")]
    pub algebraic: Option<AlgebraicReal>,
}

fn ser_ints<S: serde::Serializer>(v: &Option<Vec<BigInt>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().flatten().map(|c| c.to_string()))
}

fn ser_alg<S: serde::Serializer>(v: &Option<AlgebraicReal>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(a) => s.serialize_str(&a.to_string()),
        None => s.serialize_none(),
    }
}

impl PerronEnclosure {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> f64 {
        rational_to_f64(&((&self.lo + &self.hi) / Rational::from_integer(2.into())))
    }
}

const CHARPOLY_MAX_DIM: usize = 48;
const POWER_ITER_CAP: usize = 200_000;

/// Characteristic polynomial `det(xI - A)` by Faddeev-LeVerrier, low degree first.
pub fn charpoly(a: &[Vec<u64>]) -> Vec<BigInt> {
    let n = a.len();
    let am: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(&am, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        m = next;
        let am_k = mat_mul(&am, &m);
        let tr: BigInt = (0..n).map(|i| am_k[i][i].clone()).sum();
        c[n - k] = -tr / BigInt::from(k);
    }
    c
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn power_iteration(a: &[Vec<u64>]) -> (f64, Vec<f64>) {
    let n = a.len();
    let mut v = vec![1.0f64; n];
    let mut mu = 0.0;
    for _ in 0..POWER_ITER_CAP {
        // iterate with A + I so that periodic matrices still converge
        let w: Vec<f64> =
            (0..n).map(|i| v[i] + a[i].iter().zip(&v).map(|(&x, y)| x as f64 * y).sum::<f64>()).collect();
        let m = w.iter().cloned().fold(0.0, f64::max);
        if m == 0.0 {
            return (0.0, v);
        }
        let vv: f64 = v.iter().map(|x| x * x).sum();
        mu = w.iter().zip(&v).map(|(x, y)| x * y).sum::<f64>() / vv;
        let resid = w.iter().zip(&v).map(|(x, y)| (x - mu * y).abs()).fold(0.0, f64::max);
        v = w.into_iter().map(|x| x / m).collect();
        if resid < 1e-12 * mu {
            break;
        }
    }
    (mu - 1.0, v)
}

fn int_pow(r: &Rational, k: u32) -> Rational {
    num_traits::pow(r.clone(), k as usize)
}

/// Rational `u >= r^(1/k)` close to the real root.
fn root_upper(r: &BigInt, k: u32) -> Rational {
    let target = Rational::from_integer(r.clone());
    let f = r.to_f64().unwrap_or(f64::MAX).powf(1.0 / k as f64);
    let mut slack = 1e-12;
    loop {
        let u = Rational::from_float(f * (1.0 + slack)).unwrap_or_else(|| Rational::from_integer(r.clone()));
        if int_pow(&u, k) >= target {
            return u;
        }
        slack *= 16.0;
    }
}

/// Rational `l <= r^(1/k)` close to the real root.
fn root_lower(r: &BigInt, k: u32) -> Rational {
    let target = Rational::from_integer(r.clone());
    let f = r.to_f64().unwrap_or(f64::MAX).powf(1.0 / k as f64);
    let mut slack = 1e-12;
    loop {
        let l = Rational::from_float(f * (1.0 - slack)).unwrap_or_else(Rational::zero);
        if l <= Rational::zero() || int_pow(&l, k) <= target {
            return l.max(Rational::zero());
        }
        slack *= 16.0;
    }
}

/// Spectral radius of a nonnegative integer matrix, bracketed by
/// Collatz-Wielandt quotients and row sums of `A^k`, then tightened through
/// the characteristic polynomial when it isolates a single root.
pub fn perron_eigenvalue(a: &[Vec<u64>]) -> Result<PerronEnclosure> {
    let n = a.len();
    if n == 0 || a.iter().all(|r| r.iter().all(|&x| x == 0)) {
        return Err(Error::OutOfDomain("zero matrix has no Perron eigenvalue".into()));
    }
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::SizeMismatch(n as u32, a.iter().map(|r| r.len()).max().unwrap_or(0) as u32));
    }
    let (estimate, v) = power_iteration(a);

    let scale = Rational::from_integer(BigInt::one() << 50u32);
    let x: Vec<Rational> = v
        .iter()
        .map(|&vi| {
            let r = Rational::from_float(vi).unwrap_or_else(Rational::one) * &scale;
            Rational::from_integer(r.round().to_integer().max(BigInt::one()))
        })
        .collect();
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for i in 0..n {
        let ax: Rational = (0..n).filter(|&j| a[i][j] > 0).map(|j| Rational::from_integer(a[i][j].into()) * &x[j]).sum();
        let quot = ax / &x[i];
        lo = Some(lo.map_or(quot.clone(), |l| l.min(quot.clone())));
        hi = Some(hi.map_or(quot.clone(), |h| h.max(quot)));
    }
    let (mut lo, mut hi) = (lo.unwrap(), hi.unwrap());

    let am: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut p = am.clone();
    let mut k = 1u32;
    while k <= 64 {
        let sums: Vec<BigInt> = p.iter().map(|r| r.iter().sum()).collect();
        let max = sums.iter().max().unwrap();
        let min = sums.iter().min().unwrap();
        hi = hi.min(root_upper(max, k));
        if min.is_positive() {
            lo = lo.max(root_lower(min, k));
        }
        p = mat_mul(&p, &p);
        k *= 2;
    }
    if lo > hi {
        return Err(Error::VerificationFailed(format!(
            "Perron bounds crossed: [{}, {}]",
            format_rational(&lo),
            format_rational(&hi)
        )));
    }

    let mut out = PerronEnclosure { lo, hi, estimate, charpoly: None, algebraic: None };
    if n <= CHARPOLY_MAX_DIM {
        let cp = charpoly(a);
        let sf = Poly::from_bigints(&cp).squarefree();
        if sf.count_roots(&out.lo, &out.hi) == 1 {
            let alg = AlgebraicReal::new(integer_primitive(&sf), out.lo.clone(), out.hi.clone())?;
            let (l, h) = alg.refine(&pow2_neg(96))?;
            out.lo = l;
            out.hi = h;
            out.algebraic = Some(alg);
        }
        out.charpoly = Some(cp);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PerronDimension {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<PerronEnclosure>,
    pub dimension: DimensionValue,
}

/// `log lambda / (-log alpha)` for the Perron eigenvalue `lambda` of the
/// count matrix. An empty graph gives dimension 0 with `empty` set.
pub fn perron_dimension(g: &IntersectionGraph, alpha: &RealNumber) -> Result<PerronDimension> {
    let (nl, nh) = neg_ln_alpha(alpha)?;
    if g.is_empty() || g.matrix.iter().all(|r| r.iter().all(|&x| x == 0)) {
        let mut d = DimensionValue::zero(DimensionForm::PerronForm, "0".into());
        d.empty = true;
        return Ok(PerronDimension { lambda: None, dimension: d });
    }
    let lam = perron_eigenvalue(&g.matrix)?;
    let name = match &lam.algebraic {
        Some(a) => a.as_rational().map(|r| format_rational(&r)).unwrap_or_else(|| a.to_string()),
        None => format!("[{}, {}]", format_rational(&lam.lo), format_rational(&lam.hi)),
    };
    let exact = format!("log {} / (-log {})", name, alpha);
    let (ll, lh) = ln_enclosure(&lam.lo, &lam.hi);
    let (ll, lh) = (ll.max(0.0), lh.max(0.0));
    let mut d = DimensionValue::new(DimensionForm::PerronForm, exact, down(ll / nh).max(0.0), up(lh / nl));
    d.note = Some("growth rate of the intersection graph".into());
    Ok(PerronDimension { lambda: Some(lam), dimension: d })
}

/// Maximum over cycles of the automaton of the proportion of 0-digit edges,
/// computed exactly with Karp's minimum-mean-cycle recursion.
pub fn freq_upper_bound_over_expansions(auto: &ExpansionAutomaton) -> Result<Rational> {
    auto.require_complete()?;
    let live = auto.live_states();
    let n = auto.num_states();
    let edges: Vec<_> = auto.edges.iter().filter(|e| live[e.from] && live[e.to]).collect();
    if edges.is_empty() {
        return Ok(Rational::zero());
    }
    // d[k][v]: best weight of a walk with exactly k edges ending at v
    let mut d: Vec<Vec<Option<i64>>> = vec![vec![Some(0); n]];
    for k in 1..=n {
        let mut row = vec![None; n];
        for e in &edges {
            if let Some(w) = d[k - 1][e.from] {
                let cand = w + i64::from(e.digit == 0);
                if row[e.to].is_none_or(|x| cand > x) {
                    row[e.to] = Some(cand);
                }
            }
        }
        d.push(row);
    }
    let mut best: Option<Rational> = None;
    for v in 0..n {
        let Some(dn) = d[n][v] else { continue };
        let mut worst: Option<Rational> = None;
        for (k, dk) in d.iter().enumerate().take(n) {
            if let Some(x) = dk[v] {
                let m = Rational::new(BigInt::from(dn - x), BigInt::from((n - k) as i64));
                worst = Some(worst.map_or(m.clone(), |w| w.min(m)));
            }
        }
        if let Some(w) = worst {
            best = Some(best.map_or(w.clone(), |b| b.max(w)));
        }
    }
    Ok(best.unwrap_or_else(Rational::zero))
}
